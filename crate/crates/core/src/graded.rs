//! Basis, grading and the graded-commutative product of H = S(W) where
//! W = (V ⊕ V*)[-1] for a d-dimensional V.
//!
//! Generators are e_1..e_d (a basis of V) and f_1..f_d (the dual basis of
//! V*); every generator has degree 1, so S(W) is an exterior algebra on 2d
//! odd symbols and H^n = ⊕_{p+q=n} ∧^p V ⊗ ∧^q V*. A monomial is stored as a
//! pair of index subsets in normal order: e's first, then f's, both
//! ascending. Signs are pure permutation parities (all generators odd).

use crate::scalar::{format_rat, parse_rat, Rat};
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Hard cap on d. Basis sizes grow as 4^d; 6 keeps every exhaustive check
/// desk-scale while leaving room above the dimensions the test suites use.
pub const MAX_DIM: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("dimension {0} out of range 1..={MAX_DIM}")]
    InvalidDimension(usize),
    #[error("generator index {0} out of range (1-based, at most 64)")]
    IndexOutOfRange(usize),
    #[error("index list must be strictly ascending")]
    NotAscending,
    #[error("generator sequence has a repeated odd generator; its sign is not defined")]
    RepeatedGenerator,
    #[error("destination is not a permutation of the source")]
    NotAPermutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self, GradedError> {
        if d == 0 || d > MAX_DIM {
            return Err(GradedError::InvalidDimension(d));
        }
        Ok(Dimension(d))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Number of generators of W, i.e. 2d.
    pub fn generator_count(self) -> usize {
        2 * self.0
    }

    /// Top degree of H, i.e. 2d.
    pub fn top_degree(self) -> usize {
        2 * self.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A generator of W. Indices are 1-based. The derived order (all e's before
/// all f's, ascending indices) is the normal order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    E(usize),
    F(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::E(i) | Generator::F(i) => i,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::F(i) => write!(f, "f{i}"),
        }
    }
}

/// Normal-ordered basis monomial e_I f_J, as bitmasks (bit i-1 ⇔ index i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    e_mask: u64,
    f_mask: u64,
}

fn mask_from_indices(indices: &[usize]) -> Result<u64, GradedError> {
    let mut mask = 0u64;
    let mut prev = 0usize;
    for &i in indices {
        if i == 0 || i > 64 {
            return Err(GradedError::IndexOutOfRange(i));
        }
        if i <= prev {
            return Err(GradedError::NotAscending);
        }
        prev = i;
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

fn indices_from_mask(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        out.push(i + 1);
        mask &= mask - 1;
    }
    out
}

/// Lexicographic comparison of two ascending index sequences given as masks.
fn seq_cmp(mut a: u64, mut b: u64) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let ta = a.trailing_zeros();
        let tb = b.trailing_zeros();
        match ta.cmp(&tb) {
            Ordering::Equal => {
                a &= a - 1;
                b &= b - 1;
            }
            other => return other,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        seq_cmp(self.e_mask, other.e_mask).then_with(|| seq_cmp(self.f_mask, other.f_mask))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    /// Builds e_I f_J from strictly ascending 1-based index lists.
    pub fn new(i_indices: &[usize], j_indices: &[usize]) -> Result<Self, GradedError> {
        Ok(Monomial {
            e_mask: mask_from_indices(i_indices)?,
            f_mask: mask_from_indices(j_indices)?,
        })
    }

    pub fn generator(g: Generator) -> Result<Self, GradedError> {
        match g {
            Generator::E(i) => Monomial::new(&[i], &[]),
            Generator::F(j) => Monomial::new(&[], &[j]),
        }
    }

    pub fn e_indices(&self) -> Vec<usize> {
        indices_from_mask(self.e_mask)
    }

    pub fn f_indices(&self) -> Vec<usize> {
        indices_from_mask(self.f_mask)
    }

    pub fn degree(&self) -> usize {
        (self.e_mask.count_ones() + self.f_mask.count_ones()) as usize
    }

    /// (p, q) with p = #e's, q = #f's.
    pub fn bidegree(&self) -> (usize, usize) {
        (
            self.e_mask.count_ones() as usize,
            self.f_mask.count_ones() as usize,
        )
    }

    /// Generators in normal order.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.degree());
        out.extend(indices_from_mask(self.e_mask).into_iter().map(Generator::E));
        out.extend(indices_from_mask(self.f_mask).into_iter().map(Generator::F));
        out
    }

    /// Largest index used by the monomial (0 for the unit).
    pub fn max_index(&self) -> usize {
        let top = |m: u64| {
            if m == 0 {
                0
            } else {
                64 - m.leading_zeros() as usize
            }
        };
        top(self.e_mask).max(top(self.f_mask))
    }

    fn split_first(&self) -> Option<(Generator, Monomial)> {
        if self.e_mask != 0 {
            let i = self.e_mask.trailing_zeros() as usize;
            let rest = Monomial {
                e_mask: self.e_mask & (self.e_mask - 1),
                f_mask: self.f_mask,
            };
            Some((Generator::E(i + 1), rest))
        } else if self.f_mask != 0 {
            let j = self.f_mask.trailing_zeros() as usize;
            let rest = Monomial {
                e_mask: 0,
                f_mask: self.f_mask & (self.f_mask - 1),
            };
            Some((Generator::F(j + 1), rest))
        } else {
            None
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for g in self.generators() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
            first = false;
        }
        Ok(())
    }
}

/// Splits a normal-ordered monomial into first generator and the rest; the
/// rest stays normal-ordered, so no sign is produced.
pub(crate) fn split_first(m: &Monomial) -> Option<(Generator, Monomial)> {
    m.split_first()
}

/// Number of out-of-order generator pairs across a concatenation a·b where a
/// and b are each normal-ordered.
fn cross_inversions(a: &Monomial, b: &Monomial) -> usize {
    let ag = a.generators();
    let bg = b.generators();
    let mut inv = 0;
    for x in &ag {
        for y in &bg {
            if x > y {
                inv += 1;
            }
        }
    }
    inv
}

/// Product of basis monomials: None when a generator repeats, otherwise the
/// merged monomial and the permutation sign of normal-ordering a·b.
pub fn mul_monomials(a: &Monomial, b: &Monomial) -> Option<(Monomial, i32)> {
    if a.e_mask & b.e_mask != 0 || a.f_mask & b.f_mask != 0 {
        return None;
    }
    let sign = if cross_inversions(a, b) % 2 == 0 { 1 } else { -1 };
    Some((
        Monomial {
            e_mask: a.e_mask | b.e_mask,
            f_mask: a.f_mask | b.f_mask,
        },
        sign,
    ))
}

/// Sign of the permutation carrying `src` to `dst`; both must list the same
/// distinct generators. With repeats the parity is not well defined and the
/// call errors out.
pub fn koszul_sign(src: &[Generator], dst: &[Generator]) -> Result<i32, GradedError> {
    let mut seen = std::collections::BTreeSet::new();
    for g in src {
        if !seen.insert(*g) {
            return Err(GradedError::RepeatedGenerator);
        }
    }
    if src.len() != dst.len() {
        return Err(GradedError::NotAPermutation);
    }
    let mut perm = Vec::with_capacity(dst.len());
    for g in dst {
        match src.iter().position(|s| s == g) {
            Some(p) => perm.push(p),
            None => return Err(GradedError::NotAPermutation),
        }
    }
    let mut dedup = perm.clone();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != perm.len() {
        return Err(GradedError::NotAPermutation);
    }
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    Ok(if inv % 2 == 0 { 1 } else { -1 })
}

/// Homogeneity of an element: zero, a single degree, or mixed degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(usize),
    Mixed,
}

/// A finite linear combination of basis monomials with rational coefficients.
/// Zero coefficients are never stored; the term map keeps monomials in a
/// fixed lexicographic order, so iteration and serialization are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Rat>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Element::from_term(m, Rat::from_integer(1.into()))
    }

    pub fn from_term(m: Monomial, c: Rat) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_generator(g: Generator) -> Self {
        Element::from_monomial(Monomial::generator(g).expect("valid generator index"))
    }

    pub fn scalar(c: Rat) -> Self {
        Element::from_term(Monomial::unit(), c)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(first) => {
                if degrees.all(|d| d == first) {
                    Homogeneity::Degree(first)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    pub fn component_of_degree(&self, n: usize) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            if m.degree() == n {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    pub fn component_of_bidegree(&self, p: usize, q: usize) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            if m.bidegree() == (p, q) {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        let mut out = Element::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().map(|m| m.max_index()).max().unwrap_or(0)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if let Some((m, sign)) = mul_monomials(m1, m2) {
                    let mut c = c1 * c2;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if first {
                write!(f, "{} {}", format_rat(c), m)?;
                first = false;
            } else if crate::scalar::is_negative(c) {
                write!(f, " - {} {}", format_rat(&-c.clone()), m)?;
            } else {
                write!(f, " + {} {}", format_rat(c), m)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    #[serde(rename = "I")]
    i: Vec<usize>,
    #[serde(rename = "J")]
    j: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    terms: Vec<TermJson>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: format_rat(c),
                i: m.e_indices(),
                j: m.f_indices(),
            })
            .collect();
        ElementJson { terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ElementJson::deserialize(deserializer)?;
        let mut out = Element::zero();
        for t in raw.terms {
            let m = Monomial::new(&t.i, &t.j).map_err(D::Error::custom)?;
            let c = parse_rat(&t.coeff).map_err(D::Error::custom)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

/// All basis monomials of degree n, lexicographically ordered. Out-of-range
/// n yields an empty list.
pub fn enumerate_basis(d: Dimension, n: usize) -> Vec<Monomial> {
    if n > d.top_degree() {
        return Vec::new();
    }
    let full: u64 = if d.get() == 64 { !0 } else { (1 << d.get()) - 1 };
    let mut out = Vec::new();
    let mut e = full;
    // iterate all submasks of `full` for the e-part, then the f-part
    loop {
        let need = n as i64 - e.count_ones() as i64;
        if (0..=d.get() as i64).contains(&need) {
            let need = need as u32;
            let mut f = full;
            loop {
                if f.count_ones() == need {
                    out.push(Monomial { e_mask: e, f_mask: f });
                }
                if f == 0 {
                    break;
                }
                f = (f - 1) & full;
            }
        }
        if e == 0 {
            break;
        }
        e = (e - 1) & full;
    }
    out.sort();
    out
}

/// dim H^n = Σ_{p+q=n} C(d,p)·C(d,q).
pub fn dim_by_degree(d: Dimension, n: usize) -> usize {
    let dd = d.get();
    if n > 2 * dd {
        return 0;
    }
    let mut total = 0usize;
    for p in 0..=n.min(dd) {
        let q = n - p;
        if q > dd {
            continue;
        }
        total += num_integer::binomial(dd as u64, p as u64) as usize
            * num_integer::binomial(dd as u64, q as u64) as usize;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(i: &[usize], j: &[usize]) -> Monomial {
        Monomial::new(i, j).unwrap()
    }

    // Independent parity oracle: bubble-sort the concatenation and count swaps.
    fn sort_parity(mut gens: Vec<Generator>) -> i32 {
        let mut swaps = 0;
        let n = gens.len();
        for i in 0..n {
            for j in 0..n.saturating_sub(i + 1) {
                if gens[j] > gens[j + 1] {
                    gens.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn enumerate_basis_degree_zero_is_unit() {
        let d = Dimension::new(1).unwrap();
        assert_eq!(enumerate_basis(d, 0), vec![Monomial::unit()]);
    }

    #[test]
    fn enumerate_basis_d2_n2_has_six_monomials() {
        let d = Dimension::new(2).unwrap();
        let basis = enumerate_basis(d, 2);
        // oracle: brute-force over all (I, J) subset pairs
        let mut count = 0;
        for e in 0u64..4 {
            for f in 0u64..4 {
                if e.count_ones() + f.count_ones() == 2 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 6);
        assert_eq!(basis.len(), 6);
        // canonical order: lexicographic on (I-sequence, J-sequence)
        let expect = vec![
            m(&[], &[1, 2]),
            m(&[1], &[1]),
            m(&[1], &[2]),
            m(&[1, 2], &[]),
            m(&[2], &[1]),
            m(&[2], &[2]),
        ];
        assert_eq!(basis, expect);
    }

    #[test]
    fn enumerate_basis_out_of_range_is_empty() {
        let d = Dimension::new(1).unwrap();
        assert!(enumerate_basis(d, 3).is_empty());
    }

    #[test]
    fn basis_is_sorted_unique_and_counted_by_dim() {
        for dd in 1..=4 {
            let d = Dimension::new(dd).unwrap();
            for n in 0..=2 * dd {
                let basis = enumerate_basis(d, n);
                assert_eq!(basis.len(), dim_by_degree(d, n));
                let mut sorted = basis.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(basis, sorted);
            }
        }
    }

    #[test]
    fn dims_match_frozen_values() {
        // binomial-convolution oracle values, frozen
        let d2 = Dimension::new(2).unwrap();
        assert_eq!(dim_by_degree(d2, 4), 1);
        let d3 = Dimension::new(3).unwrap();
        assert_eq!(dim_by_degree(d3, 0), 1);
        let all: Vec<usize> = (0..=4).map(|n| dim_by_degree(d2, n)).collect();
        assert_eq!(all, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn dims_sum_to_4_pow_d() {
        for dd in 1..=MAX_DIM {
            let d = Dimension::new(dd).unwrap();
            let total: usize = (0..=2 * dd).map(|n| dim_by_degree(d, n)).sum();
            assert_eq!(total, 4usize.pow(dd as u32));
        }
    }

    #[test]
    fn multiply_examples() {
        let e1 = Element::from_generator(Generator::E(1));
        let f1 = Element::from_generator(Generator::F(1));
        let e1f1 = Element::from_monomial(m(&[1], &[1]));
        assert_eq!(&e1 * &f1, e1f1);
        assert_eq!(&f1 * &e1, -&e1f1);
        assert!((&e1 * &e1).is_zero());
    }

    #[test]
    fn multiply_agrees_with_sort_parity_oracle() {
        let d = Dimension::new(3).unwrap();
        let mut basis = Vec::new();
        for n in 0..=d.top_degree() {
            basis.extend(enumerate_basis(d, n));
        }
        for a in &basis {
            for b in &basis {
                let got = mul_monomials(a, b);
                let mut gens = a.generators();
                gens.extend(b.generators());
                let mut dedup = gens.clone();
                dedup.sort();
                dedup.dedup();
                if dedup.len() != gens.len() {
                    assert!(got.is_none());
                } else {
                    let (prod, sign) = got.unwrap();
                    assert_eq!(prod.generators(), dedup);
                    assert_eq!(sign, sort_parity(gens));
                }
            }
        }
    }

    #[test]
    fn multiply_is_graded_commutative_and_associative_d2() {
        let d = Dimension::new(2).unwrap();
        let mut basis = Vec::new();
        for n in 0..=d.top_degree() {
            basis.extend(enumerate_basis(d, n));
        }
        for a in &basis {
            for b in &basis {
                let ea = Element::from_monomial(*a);
                let eb = Element::from_monomial(*b);
                let ab = &ea * &eb;
                let ba = &eb * &ea;
                let sign = if (a.degree() * b.degree()) % 2 == 0 {
                    ba.clone()
                } else {
                    -&ba
                };
                assert_eq!(ab, sign, "commutativity at {a}, {b}");
                for c in &basis {
                    let ec = Element::from_monomial(*c);
                    assert_eq!(&(&ea * &eb) * &ec, &ea * &(&eb * &ec));
                }
            }
        }
    }

    #[test]
    fn koszul_sign_examples() {
        use Generator::{E, F};
        assert_eq!(koszul_sign(&[F(1), E(1)], &[E(1), F(1)]).unwrap(), -1);
        assert_eq!(
            koszul_sign(&[E(2), E(1), F(1)], &[E(1), E(2), F(1)]).unwrap(),
            -1
        );
        assert_eq!(koszul_sign(&[], &[]).unwrap(), 1);
        assert_eq!(
            koszul_sign(&[E(1), F(2)], &[E(1), F(1)]),
            Err(GradedError::NotAPermutation)
        );
        assert_eq!(
            koszul_sign(&[E(1), E(1)], &[E(1), E(1)]),
            Err(GradedError::RepeatedGenerator)
        );
    }

    #[test]
    fn homogeneity_queries() {
        assert_eq!(Element::zero().homogeneity(), Homogeneity::Zero);
        let x = Element::from_monomial(m(&[1], &[2]));
        assert_eq!(x.homogeneity(), Homogeneity::Degree(2));
        let mixed = &x + &Element::one();
        assert_eq!(mixed.homogeneity(), Homogeneity::Mixed);
    }

    #[test]
    fn element_json_round_trip() {
        let mut x = Element::zero();
        x.add_term(m(&[1], &[1, 2]), crate::scalar::rat(-3, 2));
        x.add_term(m(&[2], &[]), int(5));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"coeff":"-3/2","I":[1],"J":[1,2]},{"coeff":"5","I":[2],"J":[]}]}"#
        );
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn element_json_rejects_bad_input() {
        assert!(serde_json::from_str::<Element>(r#"{"terms":[{"coeff":"1","I":[2,1],"J":[]}]}"#)
            .is_err());
        assert!(serde_json::from_str::<Element>(r#"{"terms":[{"coeff":"1/0","I":[],"J":[]}]}"#)
            .is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_monomial(d: usize) -> impl Strategy<Value = Monomial> {
            (0u32..(1 << d), 0u32..(1 << d)).prop_map(move |(emask, fmask)| {
                let is: Vec<usize> = (0..d).filter(|i| emask >> i & 1 == 1).map(|i| i + 1).collect();
                let js: Vec<usize> = (0..d).filter(|j| fmask >> j & 1 == 1).map(|j| j + 1).collect();
                Monomial::new(&is, &js).unwrap()
            })
        }

        proptest! {
            #[test]
            fn multiplication_is_graded_commutative(a in arb_monomial(3), b in arb_monomial(3)) {
                let ea = Element::from_monomial(a);
                let eb = Element::from_monomial(b);
                let ab = &ea * &eb;
                let ba = &eb * &ea;
                let expect = if (a.degree() * b.degree()) % 2 == 0 { ba.clone() } else { -&ba };
                prop_assert_eq!(ab, expect);
            }

            #[test]
            fn multiplication_is_associative(
                a in arb_monomial(3),
                b in arb_monomial(3),
                c in arb_monomial(3),
            ) {
                let (ea, eb, ec) = (
                    Element::from_monomial(a),
                    Element::from_monomial(b),
                    Element::from_monomial(c),
                );
                prop_assert_eq!(&(&ea * &eb) * &ec, &ea * &(&eb * &ec));
            }

            #[test]
            fn odd_degree_squares_vanish(a in arb_monomial(3)) {
                if a.degree() % 2 == 1 {
                    let ea = Element::from_monomial(a);
                    prop_assert!((&ea * &ea).is_zero());
                }
            }
        }
    }
}
