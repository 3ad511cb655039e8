//! The big bracket: the degree −2 Poisson bracket on H generated by the
//! canonical pairing between V and V*, plus everything built on top of it —
//! Poisson-law verification, Maurer–Cartan checking, proto-Lie-bialgebra
//! classification, and the deformation complex (H, ad_h).
//!
//! Two independent implementations are kept deliberately separate: `bracket`
//! expands by the Leibniz rule recursively, `bracket_oracle` realizes the
//! bracket as a second-order differential operator in odd partial
//! derivatives. Their agreement on all basis pairs is a standing test; do
//! not merge them.

use crate::graded::{
    enumerate_basis, split_first, Dimension, Element, Generator, GradedError, Homogeneity,
    Monomial,
};
use crate::linalg::{ChainComplexRep, ComplexError, RationalMatrix};
use crate::scalar::{format_rat, Rat};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BracketError {
    #[error("element must be homogeneous of degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: String },
    #[error("element uses generator index {index} but the ambient dimension is {dim}")]
    IndexExceedsDimension { index: usize, dim: usize },
    #[error("not a Maurer-Cartan element: [h,h] = {obstruction}")]
    NotMaurerCartan { obstruction: String },
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// [g, h] for single generators: the pairing, symmetric in both slots.
/// `pairing` is the value of ⟨f_i, e_i⟩ (1 for the canonical normalization).
fn bracket_generators(g: Generator, h: Generator, pairing: &Rat) -> Element {
    match (g, h) {
        (Generator::E(i), Generator::F(j)) | (Generator::F(j), Generator::E(i)) if i == j => {
            Element::scalar(pairing.clone())
        }
        _ => Element::zero(),
    }
}

/// Bracket of normal-ordered monomials by recursive Leibniz expansion.
///
/// If the left argument has more than one generator, peel its first
/// generator g and use [g·r, b] = g[r, b] + (−1)^{|r||b|}[g, b]r; otherwise
/// peel the right argument and use [g, h·r] = [g, h]r + (−1)^{|g||h|}h[g, r].
/// Any bracket involving the unit is zero.
fn bracket_monomials(a: &Monomial, b: &Monomial, pairing: &Rat) -> Element {
    let da = a.degree();
    let db = b.degree();
    if da == 0 || db == 0 {
        return Element::zero();
    }
    if da == 1 && db == 1 {
        let (ga, _) = split_first(a).expect("degree 1");
        let (gb, _) = split_first(b).expect("degree 1");
        return bracket_generators(ga, gb, pairing);
    }
    if da > 1 {
        let (g, rest) = split_first(a).expect("degree > 1");
        let ge = Element::from_generator(g);
        let left = &ge * &bracket_monomials(&rest, b, pairing);
        let gm = Monomial::generator(g).expect("valid generator");
        let right = &bracket_monomials(&gm, b, pairing) * &Element::from_monomial(rest);
        if (rest.degree() * db) % 2 == 0 {
            &left + &right
        } else {
            &left - &right
        }
    } else {
        let (h, rest) = split_first(b).expect("degree > 1");
        let hm = Monomial::generator(h).expect("valid generator");
        let left = &bracket_monomials(a, &hm, pairing) * &Element::from_monomial(rest);
        // |a| = |h| = 1 here, so the transposition sign is always −1
        let right = &Element::from_generator(h) * &bracket_monomials(a, &rest, pairing);
        &left - &right
    }
}

fn bracket_with_pairing(a: &Element, b: &Element, pairing: &Rat) -> Element {
    let mut out = Element::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let br = bracket_monomials(ma, mb, pairing);
            let c = ca * cb;
            for (m, v) in br.terms() {
                out.add_term(*m, v * &c);
            }
        }
    }
    out
}

/// The big bracket [a, b], extended bilinearly from the generator pairing
/// by the Leibniz rule.
pub fn bracket(a: &Element, b: &Element) -> Element {
    bracket_with_pairing(a, b, &Rat::one())
}

/// The big bracket for the rescaled pairing ⟨f_i, e_i⟩ = c. Exists to test
/// that rescaling the form rescales every bracket value by the same factor;
/// no other code should call it.
pub fn bracket_scaled(a: &Element, b: &Element, c: &Rat) -> Element {
    bracket_with_pairing(a, b, c)
}

/// Odd partial derivative ∂_g m: zero if g ∉ m, otherwise (−1)^{r−1} times
/// m with g removed, where r is g's 1-based position in normal order.
fn odd_partial(m: &Monomial, g: Generator) -> Option<(Monomial, i32)> {
    let gens = m.generators();
    let r = gens.iter().position(|&x| x == g)?;
    let remaining: Vec<Generator> = gens
        .iter()
        .copied()
        .filter(|&x| x != g)
        .collect();
    let mut is = Vec::new();
    let mut js = Vec::new();
    for gen in remaining {
        match gen {
            Generator::E(i) => is.push(i),
            Generator::F(j) => js.push(j),
        }
    }
    let out = Monomial::new(&is, &js).expect("removal preserves normal order");
    let sign = if r % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}

/// Independent realization of the big bracket as a bi-derivation:
/// [a, b] = (−1)^{|a|−1} Σ_i (∂_{e_i}a·∂_{f_i}b + ∂_{f_i}a·∂_{e_i}b),
/// applied per homogeneous term of a. Structurally unrelated to the
/// recursive Leibniz expansion in `bracket`; keep it that way.
pub fn bracket_oracle(a: &Element, b: &Element) -> Element {
    let top = a.max_index().max(b.max_index());
    let mut out = Element::zero();
    for (ma, ca) in a.terms() {
        let sign_a = if (ma.degree() + 1) % 2 == 0 { 1 } else { -1 };
        for (mb, cb) in b.terms() {
            for i in 1..=top {
                for (ga, gb) in [
                    (Generator::E(i), Generator::F(i)),
                    (Generator::F(i), Generator::E(i)),
                ] {
                    let Some((pa, sa)) = odd_partial(ma, ga) else {
                        continue;
                    };
                    let Some((pb, sb)) = odd_partial(mb, gb) else {
                        continue;
                    };
                    let Some((m, sm)) = crate::graded::mul_monomials(&pa, &pb) else {
                        continue;
                    };
                    let s = sign_a * sa * sb * sm;
                    let mut c = ca * cb;
                    if s < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
    }
    out
}

/// Gram matrix of the bracket on W: entry (i, j) = [w_i, w_j] with the
/// basis ordered e_1..e_d, f_1..f_d. Nondegeneracy (full rank 2d) is the
/// standing invariant.
pub fn pairing_gram(d: Dimension) -> RationalMatrix {
    let dd = d.get();
    let mut gens = Vec::with_capacity(2 * dd);
    gens.extend((1..=dd).map(Generator::E));
    gens.extend((1..=dd).map(Generator::F));
    let mut m = RationalMatrix::zero(2 * dd, 2 * dd);
    for (r, &g) in gens.iter().enumerate() {
        for (c, &h) in gens.iter().enumerate() {
            let v = bracket(&Element::from_generator(g), &Element::from_generator(h));
            let coeff = v.coefficient(&Monomial::unit());
            m.set(r, c, coeff);
        }
    }
    m
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PoissonViolation {
    pub identity: String,
    pub witness: Vec<String>,
    pub discrepancy: String,
}

/// Result of the Poisson-law audit. `violations` keeps at most
/// `MAX_STORED_VIOLATIONS` witnesses; `violations_total` counts all.
#[derive(Debug, Clone, Serialize)]
pub struct PoissonReport {
    pub dim: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub random_triples: usize,
    pub violations_total: usize,
    pub violations: Vec<PoissonViolation>,
}

const MAX_STORED_VIOLATIONS: usize = 25;

impl PoissonReport {
    pub fn passed(&self) -> bool {
        self.violations_total == 0
    }

    fn record(&mut self, identity: &str, witness: Vec<String>, discrepancy: &Element) {
        self.violations_total += 1;
        if self.violations.len() < MAX_STORED_VIOLATIONS {
            self.violations.push(PoissonViolation {
                identity: identity.to_string(),
                witness,
                discrepancy: discrepancy.to_string(),
            });
        }
    }
}

/// Exhaustive triple threshold: above this dimension pair checks stay
/// exhaustive but triples are sampled.
const EXHAUSTIVE_TRIPLE_DIM: usize = 2;

/// Number of random basis triples per sampled dimension.
pub const RANDOM_TRIPLE_COUNT: usize = 10_000;

/// Audits the Poisson laws of the big bracket on the degree-shifted algebra:
/// degree law, antisymmetry and Jacobi for the shift by 2, the Leibniz rule,
/// and agreement with the bi-derivation oracle. Pairs are always exhaustive
/// over the basis; triples are exhaustive for d ≤ 2 and sampled (seeded) for
/// d = 3.
pub fn verify_poisson(d: Dimension, seed: u64) -> PoissonReport {
    verify_poisson_with(d, seed, &bracket)
}

/// Same audit against an arbitrary candidate bracket; exists so corrupted
/// brackets can be shown to fail.
pub fn verify_poisson_with(
    d: Dimension,
    seed: u64,
    br: &dyn Fn(&Element, &Element) -> Element,
) -> PoissonReport {
    let mut basis: Vec<Monomial> = Vec::new();
    for n in 0..=d.top_degree() {
        basis.extend(enumerate_basis(d, n));
    }
    let mut report = PoissonReport {
        dim: d.get(),
        pairs_checked: 0,
        triples_checked: 0,
        random_triples: 0,
        violations_total: 0,
        violations: Vec::new(),
    };

    for a in &basis {
        let ea = Element::from_monomial(*a);
        for b in &basis {
            let eb = Element::from_monomial(*b);
            report.pairs_checked += 1;
            let ab = br(&ea, &eb);

            // degree law: |[a,b]| = |a| + |b| − 2
            let ok = match ab.homogeneity() {
                Homogeneity::Zero => true,
                Homogeneity::Degree(n) => a.degree() + b.degree() == n + 2,
                Homogeneity::Mixed => false,
            };
            if !ok {
                report.record("degree", vec![a.to_string(), b.to_string()], &ab);
            }

            // antisymmetry after the shift by 2 (parities unchanged mod 2)
            let ba = br(&eb, &ea);
            let expected = if (a.degree() * b.degree()) % 2 == 0 {
                -&ba
            } else {
                ba.clone()
            };
            let diff = &ab - &expected;
            if !diff.is_zero() {
                report.record("antisymmetry", vec![a.to_string(), b.to_string()], &diff);
            }

            // cross-implementation agreement
            let oracle = bracket_oracle(&ea, &eb);
            let diff = &ab - &oracle;
            if !diff.is_zero() {
                report.record(
                    "oracle-agreement",
                    vec![a.to_string(), b.to_string()],
                    &diff,
                );
            }
        }
    }

    let check_triple = |report: &mut PoissonReport, a: &Monomial, b: &Monomial, c: &Monomial| {
        let ea = Element::from_monomial(*a);
        let eb = Element::from_monomial(*b);
        let ec = Element::from_monomial(*c);
        report.triples_checked += 1;

        // Leibniz: [a, bc] = [a,b]c + (−1)^{(|a|−2)|b|} b[a,c]
        let lhs = br(&ea, &(&eb * &ec));
        let first = &br(&ea, &eb) * &ec;
        let second = &eb * &br(&ea, &ec);
        let rhs = if (a.degree() * b.degree()) % 2 == 0 {
            &first + &second
        } else {
            &first - &second
        };
        let diff = &lhs - &rhs;
        if !diff.is_zero() {
            report.record(
                "leibniz",
                vec![a.to_string(), b.to_string(), c.to_string()],
                &diff,
            );
        }

        // Jacobi for the shift by 2: [a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]]
        let lhs = br(&ea, &br(&eb, &ec));
        let first = br(&br(&ea, &eb), &ec);
        let second = br(&eb, &br(&ea, &ec));
        let rhs = if (a.degree() * b.degree()) % 2 == 0 {
            &first + &second
        } else {
            &first - &second
        };
        let diff = &lhs - &rhs;
        if !diff.is_zero() {
            report.record(
                "jacobi",
                vec![a.to_string(), b.to_string(), c.to_string()],
                &diff,
            );
        }
    };

    if d.get() <= EXHAUSTIVE_TRIPLE_DIM {
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    check_triple(&mut report, a, b, c);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_TRIPLE_COUNT {
            let a = basis[rng.gen_range(0..basis.len())];
            let b = basis[rng.gen_range(0..basis.len())];
            let c = basis[rng.gen_range(0..basis.len())];
            check_triple(&mut report, &a, &b, &c);
            report.random_triples += 1;
        }
    }

    report
}

/// The five possible outcomes for a degree-3 element h, keyed on [h,h] = 0
/// and the vanishing of its ∧³V and ∧³V* components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    NotMC,
    LieBialgebra,
    LieQuasiBialgebra,
    LieCoquasiBialgebra,
    ProtoBialgebra,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::NotMC => "NotMC",
            Classification::LieBialgebra => "LieBialgebra",
            Classification::LieQuasiBialgebra => "LieQuasiBialgebra",
            Classification::LieCoquasiBialgebra => "LieCoquasiBialgebra",
            Classification::ProtoBialgebra => "ProtoBialgebra",
        };
        write!(f, "{s}")
    }
}

/// A degree-3 element h of H with its ambient dimension. The bidegree
/// components λ (1,2), δ (2,1), α (3,0), β (0,3) always reassemble to h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtoStructure {
    h: Element,
    d: Dimension,
}

impl ProtoStructure {
    /// Validates pure degree 3 (zero is allowed) and that every index fits
    /// inside the stated dimension.
    pub fn new(h: Element, d: Dimension) -> Result<Self, BracketError> {
        match h.homogeneity() {
            Homogeneity::Zero | Homogeneity::Degree(3) => {}
            other => {
                return Err(BracketError::WrongDegree {
                    expected: 3,
                    found: match other {
                        Homogeneity::Degree(n) => format!("degree {n}"),
                        _ => "mixed degrees".to_string(),
                    },
                })
            }
        }
        let top = h.max_index();
        if top > d.get() {
            return Err(BracketError::IndexExceedsDimension {
                index: top,
                dim: d.get(),
            });
        }
        Ok(ProtoStructure { h, d })
    }

    pub fn element(&self) -> &Element {
        &self.h
    }

    pub fn dimension(&self) -> Dimension {
        self.d
    }

    /// Cobracket-type component in V ⊗ ∧²V*.
    pub fn lambda(&self) -> Element {
        self.h.component_of_bidegree(1, 2)
    }

    /// Bracket-type component in ∧²V ⊗ V*.
    pub fn delta(&self) -> Element {
        self.h.component_of_bidegree(2, 1)
    }

    /// Component in ∧³V.
    pub fn alpha(&self) -> Element {
        self.h.component_of_bidegree(3, 0)
    }

    /// Component in ∧³V*.
    pub fn beta(&self) -> Element {
        self.h.component_of_bidegree(0, 3)
    }

    /// ([h,h], whether it vanishes exactly).
    pub fn mc_check(&self) -> (Element, bool) {
        let hh = bracket(&self.h, &self.h);
        let ok = hh.is_zero();
        (hh, ok)
    }

    pub fn classify(&self) -> Classification {
        let (_, mc) = self.mc_check();
        if !mc {
            return Classification::NotMC;
        }
        match (self.alpha().is_zero(), self.beta().is_zero()) {
            (true, true) => Classification::LieBialgebra,
            (false, true) => Classification::LieQuasiBialgebra,
            (true, false) => Classification::LieCoquasiBialgebra,
            (false, false) => Classification::ProtoBialgebra,
        }
    }

    /// Matrices of a ↦ [h, a] per degree, without any Maurer–Cartan
    /// precondition: the matrices of ad_h exist for every h, they just
    /// need not square to zero. Entry n maps degree n to degree n+1.
    pub fn ad_matrices(&self) -> Vec<RationalMatrix> {
        let top = self.d.top_degree();
        let mut bases: Vec<Vec<Monomial>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            bases.push(enumerate_basis(self.d, n));
        }
        let index: Vec<BTreeMap<Monomial, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect())
            .collect();
        let mut out = Vec::with_capacity(top);
        for n in 0..top {
            let mut mat = RationalMatrix::zero(bases[n + 1].len(), bases[n].len());
            for (col, m) in bases[n].iter().enumerate() {
                let image = bracket(&self.h, &Element::from_monomial(*m));
                for (mm, c) in image.terms() {
                    let row = index[n + 1][mm];
                    mat.add_to(row, col, c.clone());
                }
            }
            out.push(mat);
        }
        out
    }

    /// The deformation complex (H, ad_h) as a validated cochain complex.
    /// Errors when h is not Maurer–Cartan, since ad_h² = ½ ad_{[h,h]} would
    /// then fail to vanish.
    pub fn ad(&self) -> Result<ChainComplexRep, BracketError> {
        let (hh, ok) = self.mc_check();
        if !ok {
            return Err(BracketError::NotMaurerCartan {
                obstruction: hh.to_string(),
            });
        }
        Ok(ChainComplexRep::new(self.ad_matrices())?)
    }

    /// dim H^n(H, ad_h) for n = 0..2d.
    pub fn deformation_cohomology(&self) -> Result<Vec<usize>, BracketError> {
        Ok(self.ad()?.cohomology_dims())
    }
}

/// Smallest admissible dimension containing every index of e; at least 1.
pub fn infer_dimension(e: &Element) -> Result<Dimension, GradedError> {
    Dimension::new(e.max_index().max(1))
}

/// Random degree-3 element with coefficients drawn from [−3, 3] over the
/// given dimension; the workhorse for the Maurer–Cartan ⇔ d² experiments.
pub fn random_degree3_element(d: Dimension, rng: &mut impl Rng) -> Element {
    let basis = enumerate_basis(d, 3);
    let mut out = Element::zero();
    for m in basis {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            out.add_term(m, crate::scalar::int(c));
        }
    }
    out
}

/// Convenience used by reports: "0" or the element rendering.
pub fn render_element(e: &Element) -> String {
    e.to_string()
}

/// Formats a rational matrix entry list for violation messages.
pub fn render_matrix_entry(v: &Rat) -> String {
    format_rat(v)
}
