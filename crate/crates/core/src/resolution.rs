//! Resolutions over the enveloping algebra of a finite-dimensional Lie
//! algebra 𝔤: the two-sided Koszul-type induced resolution with differential
//! ∂, the coinduced resolution with differential d, the reduced hom-complex
//! (∧𝔤⊗∧𝔤*, ad_λ), the Yoneda product for abelian 𝔤, and the transport of
//! the differential through the induced/coinduced adjunction.
//!
//! U𝔤 is represented on a PBW basis: exponent vectors over the ordered
//! basis x_1..x_d, truncated by total filtration degree. Products x_i·m and
//! m·x_i are straightened recursively through the structure constants; the
//! recursion terminates because each bracket substitution lowers the degree
//! and the in-degree reshuffles strictly shrink the out-of-order prefix.

use crate::bracket::{BracketError, ProtoStructure};
use crate::graded::{mul_monomials, Dimension, Element, GradedError, Monomial};
use crate::linalg::{ChainComplexRep, RationalMatrix};
use crate::scalar::{format_rat, parse_rat, Rat};
use num_integer::binomial;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("dimension {0} out of range 1..=6")]
    InvalidDimension(usize),
    #[error("structure constant index ({i}, {j}, {k}) out of range for dimension {d}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, d: usize },
    #[error("structure constants must be given with i < j; got (i, j) = ({0}, {1})")]
    NotLowerTriangle(usize, usize),
    #[error("Jacobi identity fails: jacobiator coefficient J^{l}_{{{i},{j},{k}}} = {value}")]
    JacobiFailure {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        value: String,
    },
    #[error("unknown builtin Lie algebra {0:?}")]
    UnknownBuiltin(String),
    #[error("exterior level {n} out of range for dimension {d}")]
    BadLevel { n: usize, d: usize },
    #[error("operation requires an abelian Lie algebra")]
    NonAbelian,
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

/// Antisymmetric structure constants c^k_{ij} for a candidate bracket
/// [x_i, x_j] = Σ_k c^k_{ij} x_k. Jacobi is NOT assumed here; this type
/// exists so that non-Lie inputs can still be turned into a λ tensor and
/// compared against the Jacobi oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    d: usize,
    /// c[i][j][k], 0-based, antisymmetric in (i, j)
    c: Vec<Vec<Vec<Rat>>>,
}

impl StructureConstants {
    /// Builds from 1-based entries (i, j, k, value) with i < j; the (j, i)
    /// entries are filled in by antisymmetry.
    pub fn from_lower_triangle(
        d: usize,
        entries: &[(usize, usize, usize, Rat)],
    ) -> Result<Self, ResolutionError> {
        if d == 0 || d > crate::graded::MAX_DIM {
            return Err(ResolutionError::InvalidDimension(d));
        }
        let mut c = vec![vec![vec![Rat::zero(); d]; d]; d];
        for &(i, j, k, ref v) in entries {
            if i == 0 || j == 0 || k == 0 || i > d || j > d || k > d {
                return Err(ResolutionError::IndexOutOfRange { i, j, k, d });
            }
            if i >= j {
                return Err(ResolutionError::NotLowerTriangle(i, j));
            }
            c[i - 1][j - 1][k - 1] += v;
            c[j - 1][i - 1][k - 1] -= v;
        }
        Ok(StructureConstants { d, c })
    }

    pub fn zero(d: usize) -> Result<Self, ResolutionError> {
        StructureConstants::from_lower_triangle(d, &[])
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// c^·_{ij} as a coefficient vector (0-based i, j).
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rat] {
        &self.c[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.c
            .iter()
            .flatten()
            .flatten()
            .all(|v| v.is_zero())
    }

    /// Jacobiator J^l_{ijk} = Σ_m (c^m_{ij}c^l_{mk} + c^m_{jk}c^l_{mi} +
    /// c^m_{ki}c^l_{mj}); all entries vanish exactly when the constants
    /// define a Lie algebra. Returns the nonzero entries with 1-based
    /// indices i < j < k.
    pub fn jacobiator(&self) -> Vec<(usize, usize, usize, usize, Rat)> {
        let d = self.d;
        let mut out = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    for l in 0..d {
                        let mut v = Rat::zero();
                        for m in 0..d {
                            v += &self.c[i][j][m] * &self.c[m][k][l];
                            v += &self.c[j][k][m] * &self.c[m][i][l];
                            v += &self.c[k][i][m] * &self.c[m][j][l];
                        }
                        if !v.is_zero() {
                            out.push((i + 1, j + 1, k + 1, l + 1, v));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_jacobi(&self) -> bool {
        self.jacobiator().is_empty()
    }
}

/// The λ tensor of a candidate bracket: λ = Σ_{i<j,k} c^k_{ij} e_k f_i f_j,
/// the bidegree-(1, 2) element of H encoding the structure constants.
/// Defined for raw (possibly non-Jacobi) constants on purpose: [λ,λ] = 0
/// exactly when Jacobi holds, and that equivalence is a standing test.
pub fn lambda_element(c: &StructureConstants) -> Element {
    let mut out = Element::zero();
    for i in 0..c.d {
        for j in (i + 1)..c.d {
            for (k, v) in c.c[i][j].iter().enumerate() {
                if !v.is_zero() {
                    let m = Monomial::new(&[k + 1], &[i + 1, j + 1])
                        .expect("indices ascending and in range");
                    out.add_term(m, v.clone());
                }
            }
        }
    }
    out
}

/// A validated Lie algebra: antisymmetric constants satisfying Jacobi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraData {
    name: String,
    consts: StructureConstants,
}

impl LieAlgebraData {
    pub fn new(name: impl Into<String>, consts: StructureConstants) -> Result<Self, ResolutionError> {
        if let Some((i, j, k, l, v)) = consts.jacobiator().into_iter().next() {
            return Err(ResolutionError::JacobiFailure {
                i,
                j,
                k,
                l,
                value: format_rat(&v),
            });
        }
        Ok(LieAlgebraData {
            name: name.into(),
            consts,
        })
    }

    pub const BUILTIN_NAMES: [&'static str; 6] = [
        "abelian1",
        "abelian2",
        "abelian3",
        "nonabelian2",
        "heisenberg3",
        "sl2",
    ];

    pub fn builtin(name: &str) -> Result<Self, ResolutionError> {
        let int = |v: i64| Rat::from_integer(v.into());
        let make = |d: usize, entries: &[(usize, usize, usize, i64)]| {
            let entries: Vec<_> = entries
                .iter()
                .map(|&(i, j, k, v)| (i, j, k, int(v)))
                .collect();
            StructureConstants::from_lower_triangle(d, &entries)
        };
        let consts = match name {
            "abelian1" => make(1, &[])?,
            "abelian2" => make(2, &[])?,
            "abelian3" => make(3, &[])?,
            // [x1, x2] = x2
            "nonabelian2" => make(2, &[(1, 2, 2, 1)])?,
            // [x1, x2] = x3, x3 central
            "heisenberg3" => make(3, &[(1, 2, 3, 1)])?,
            // x1 = e, x2 = f, x3 = h: [e,f] = h, [h,e] = 2e, [h,f] = −2f
            "sl2" => make(3, &[(1, 2, 3, 1), (1, 3, 1, -2), (2, 3, 2, 2)])?,
            other => return Err(ResolutionError::UnknownBuiltin(other.to_string())),
        };
        LieAlgebraData::new(name, consts)
    }

    pub fn abelian(d: usize) -> Result<Self, ResolutionError> {
        LieAlgebraData::new(format!("abelian{d}"), StructureConstants::zero(d)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.consts.d
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.consts
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.is_abelian()
    }

    pub fn lambda(&self) -> Element {
        lambda_element(&self.consts)
    }
}

#[derive(Deserialize)]
struct LieJson {
    #[serde(default)]
    name: Option<String>,
    d: usize,
    c: Vec<(usize, usize, usize, String)>,
}

impl<'de> Deserialize<'de> for LieAlgebraData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = LieJson::deserialize(deserializer)?;
        let entries: Result<Vec<_>, D::Error> = raw
            .c
            .into_iter()
            .map(|(i, j, k, s)| {
                parse_rat(&s)
                    .map(|v| (i, j, k, v))
                    .map_err(D::Error::custom)
            })
            .collect();
        let consts = StructureConstants::from_lower_triangle(raw.d, &entries?)
            .map_err(D::Error::custom)?;
        LieAlgebraData::new(raw.name.unwrap_or_else(|| "custom".to_string()), consts)
            .map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// PBW arithmetic
// ---------------------------------------------------------------------------

/// Elements of U𝔤 as linear combinations of PBW exponent vectors.
pub type UElem = BTreeMap<Vec<usize>, Rat>;

fn u_add(acc: &mut UElem, m: Vec<usize>, v: Rat) {
    if v.is_zero() {
        return;
    }
    *acc.entry(m).or_insert_with(Rat::zero) += v;
}

fn u_cleanup(acc: &mut UElem) {
    acc.retain(|_, v| !v.is_zero());
}

fn deg(g: &[usize]) -> usize {
    g.iter().sum()
}

impl StructureConstants {
    /// x_i · x^γ straightened onto the PBW basis (0-based i).
    pub fn left_mul(&self, i: usize, gamma: &[usize]) -> UElem {
        let mut out = UElem::new();
        let Some(j) = gamma.iter().position(|&e| e > 0) else {
            let mut m = vec![0; self.d];
            m[i] = 1;
            u_add(&mut out, m, Rat::from_integer(1.into()));
            return out;
        };
        if i <= j {
            let mut m = gamma.to_vec();
            m[i] += 1;
            u_add(&mut out, m, Rat::from_integer(1.into()));
            return out;
        }
        // x_i x_j x^{γ−u_j} = x_j (x_i x^{γ−u_j}) + [x_i, x_j] x^{γ−u_j}
        let mut rest = gamma.to_vec();
        rest[j] -= 1;
        for (m, v) in self.left_mul(i, &rest) {
            for (mm, vv) in self.left_mul(j, &m) {
                u_add(&mut out, mm, &v * &vv);
            }
        }
        for (k, ck) in self.c[i][j].iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (mm, vv) in self.left_mul(k, &rest) {
                u_add(&mut out, mm, ck * &vv);
            }
        }
        u_cleanup(&mut out);
        out
    }

    /// x^γ · x_i straightened onto the PBW basis (0-based i).
    pub fn right_mul(&self, gamma: &[usize], i: usize) -> UElem {
        let mut out = UElem::new();
        let Some(j) = gamma.iter().rposition(|&e| e > 0) else {
            let mut m = vec![0; self.d];
            m[i] = 1;
            u_add(&mut out, m, Rat::from_integer(1.into()));
            return out;
        };
        if i >= j {
            let mut m = gamma.to_vec();
            m[i] += 1;
            u_add(&mut out, m, Rat::from_integer(1.into()));
            return out;
        }
        // x^{γ−u_j} x_j x_i = (x^{γ−u_j} x_i) x_j + x^{γ−u_j} [x_j, x_i]
        let mut rest = gamma.to_vec();
        rest[j] -= 1;
        for (m, v) in self.right_mul(&rest, i) {
            for (mm, vv) in self.right_mul(&m, j) {
                u_add(&mut out, mm, &v * &vv);
            }
        }
        for (k, ck) in self.c[j][i].iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (mm, vv) in self.right_mul(&rest, k) {
                u_add(&mut out, mm, ck * &vv);
            }
        }
        u_cleanup(&mut out);
        out
    }
}

/// All exponent vectors over d variables with total degree ≤ cap, in
/// lexicographic order.
pub fn exponent_vectors(d: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for prefix in &out {
            let used = deg(prefix);
            for e in 0..=(cap - used) {
                let mut v = prefix.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Basis of ∧ⁿ𝔤 as e-only monomials, in the canonical monomial order.
pub fn wedge_basis(d: usize, n: usize) -> Vec<Monomial> {
    if n > d {
        return Vec::new();
    }
    let full: u64 = (1 << d) - 1;
    let mut out = Vec::new();
    let mut m = full;
    loop {
        if m.count_ones() as usize == n {
            let idx: Vec<usize> = (0..d).filter(|b| m & (1 << b) != 0).map(|b| b + 1).collect();
            out.push(Monomial::new(&idx, &[]).expect("ascending"));
        }
        if m == 0 {
            break;
        }
        m = (m - 1) & full;
    }
    out.sort();
    out
}

/// Basis element of the level-n piece A⊗∧ⁿ𝔤⊗A, truncated by total
/// filtration degree deg(a) + n + deg(b) ≤ cap.
pub type TetraBasisElem = (Vec<usize>, Monomial, Vec<usize>);

pub fn tetra_basis(d: usize, n: usize, cap: usize) -> Vec<TetraBasisElem> {
    if n > d || n > cap {
        return Vec::new();
    }
    let budget = cap - n;
    let exps = exponent_vectors(d, budget);
    let mut out = Vec::new();
    for a in &exps {
        for b in &exps {
            if deg(a) + deg(b) > budget {
                continue;
            }
            for w in wedge_basis(d, n) {
                out.push((a.clone(), w, b.clone()));
            }
        }
    }
    out.sort();
    out
}

fn tetra_index(basis: &[TetraBasisElem]) -> BTreeMap<TetraBasisElem, usize> {
    basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect()
}

fn monomial_of_index(k: usize) -> Monomial {
    Monomial::new(&[k], &[]).expect("positive index")
}

fn induced_differential_impl(
    g: &LieAlgebraData,
    n: usize,
    cap: usize,
    flip_right_action: bool,
) -> Result<RationalMatrix, ResolutionError> {
    let d = g.dim();
    if n == 0 || n > d {
        return Err(ResolutionError::BadLevel { n, d });
    }
    let src = tetra_basis(d, n, cap);
    let dst = tetra_basis(d, n - 1, cap);
    let dst_idx = tetra_index(&dst);
    let mut m = RationalMatrix::zero(dst.len(), src.len());
    let c = g.constants();
    for (col, (a, nset, b)) in src.iter().enumerate() {
        let positions = nset.e_indices(); // ascending 1-based generator indices
        for (r, &i) in positions.iter().enumerate() {
            let sign1 = if r % 2 == 0 { 1 } else { -1 }; // (−1)^{position−1}
            let reduced: Vec<usize> = positions
                .iter()
                .copied()
                .filter(|&x| x != i)
                .collect();
            let nm = Monomial::new(&reduced, &[]).expect("ascending");
            // a·x_i ⊗ x_{N−i} ⊗ b
            for (gamma, v) in c.right_mul(a, i - 1) {
                let key = (gamma, nm, b.clone());
                if let Some(&row) = dst_idx.get(&key) {
                    let mut val = v;
                    if sign1 < 0 {
                        val = -val;
                    }
                    m.add_to(row, col, val);
                }
            }
            // − a ⊗ x_{N−i} ⊗ x_i·b   (the mutated variant flips this sign)
            for (gamma, v) in c.left_mul(i - 1, b) {
                let key = (a.clone(), nm, gamma);
                if let Some(&row) = dst_idx.get(&key) {
                    let mut val = v;
                    let neg = (sign1 < 0) ^ !flip_right_action;
                    if neg {
                        val = -val;
                    }
                    m.add_to(row, col, val);
                }
            }
        }
        // bracket insertions: (−1)^{pos_i + pos_j} a ⊗ [x_i,x_j]∧x_{N−ij} ⊗ b
        for ri in 0..positions.len() {
            for rj in (ri + 1)..positions.len() {
                let (i, j) = (positions[ri], positions[rj]);
                let sign2 = if (ri + rj) % 2 == 0 { 1 } else { -1 }; // (−1)^{(ri+1)+(rj+1)}
                let reduced: Vec<usize> = positions
                    .iter()
                    .copied()
                    .filter(|&x| x != i && x != j)
                    .collect();
                let nm = Monomial::new(&reduced, &[]).expect("ascending");
                for (k, ck) in c.bracket_basis(i - 1, j - 1).iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    let Some((merged, wsign)) = mul_monomials(&monomial_of_index(k + 1), &nm)
                    else {
                        continue;
                    };
                    let key = (a.clone(), merged, b.clone());
                    if let Some(&row) = dst_idx.get(&key) {
                        let mut val = ck.clone();
                        if sign2 * wsign < 0 {
                            val = -val;
                        }
                        m.add_to(row, col, val);
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Matrix of ∂_n: A⊗∧ⁿ𝔤⊗A → A⊗∧^{n−1}𝔤⊗A on the cap-truncated basis:
/// ∂(a⊗x_N⊗b) = Σ_r (−1)^{r−1}(a·x_{i_r}⊗x_{N−i_r}⊗b − a⊗x_{N−i_r}⊗x_{i_r}·b)
///            + Σ_{r<s} (−1)^{r+s} a⊗[x_{i_r},x_{i_s}]∧x_{N−i_ri_s}⊗b,
/// indices ordered ascending, r, s their 1-based positions.
pub fn induced_differential(
    g: &LieAlgebraData,
    n: usize,
    cap: usize,
) -> Result<RationalMatrix, ResolutionError> {
    induced_differential_impl(g, n, cap, false)
}

/// Matrix of d_n: A⊗∧ⁿ𝔤⊗A → A⊗∧^{n+1}𝔤⊗A on the cap-truncated basis:
/// d_n = F̂ − (−1)^n Ŝ with
/// F̂(a⊗x_N⊗b) = Σ_k a_k·x^{a−u_k}⊗x_k∧x_N⊗b (Δ(a) projected to U𝔤⊗𝔤),
/// Ŝ(a⊗x_N⊗b) = Σ_k b_k·a⊗x_N∧x_k⊗x^{b−u_k} (Δ(b) projected to 𝔤⊗U𝔤).
/// The level-dependent sign on Ŝ is what makes d² = 0; see the decision
/// record in the workspace notes.
pub fn coinduced_differential(
    g: &LieAlgebraData,
    n: usize,
    cap: usize,
) -> Result<RationalMatrix, ResolutionError> {
    let d = g.dim();
    if n >= d {
        return Err(ResolutionError::BadLevel { n, d });
    }
    let src = tetra_basis(d, n, cap);
    let dst = tetra_basis(d, n + 1, cap);
    let dst_idx = tetra_index(&dst);
    let mut m = RationalMatrix::zero(dst.len(), src.len());
    for (col, (a, nset, b)) in src.iter().enumerate() {
        for (k, &ak) in a.iter().enumerate() {
            if ak == 0 {
                continue;
            }
            let Some((merged, wsign)) = mul_monomials(&monomial_of_index(k + 1), nset) else {
                continue;
            };
            let mut reduced = a.clone();
            reduced[k] -= 1;
            let key = (reduced, merged, b.clone());
            if let Some(&row) = dst_idx.get(&key) {
                let mut val = Rat::from_integer((ak as i64).into());
                if wsign < 0 {
                    val = -val;
                }
                m.add_to(row, col, val);
            }
        }
        for (k, &bk) in b.iter().enumerate() {
            if bk == 0 {
                continue;
            }
            let Some((merged, wsign)) = mul_monomials(nset, &monomial_of_index(k + 1)) else {
                continue;
            };
            let mut reduced = b.clone();
            reduced[k] -= 1;
            let key = (a.clone(), merged, reduced);
            if let Some(&row) = dst_idx.get(&key) {
                let mut val = Rat::from_integer((bk as i64).into());
                // −(−1)^n Ŝ
                let neg = (n % 2 == 0) ^ (wsign < 0);
                if neg {
                    val = -val;
                }
                m.add_to(row, col, val);
            }
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// The reduced hom-complex and the Yoneda product
// ---------------------------------------------------------------------------

/// The reduced hom-complex (∧𝔤⊗∧𝔤*, ad_λ) as a validated cochain complex;
/// for abelian 𝔤 the differential vanishes and the cohomology is the whole
/// graded space.
pub fn hom_complex(g: &LieAlgebraData) -> Result<ChainComplexRep, ResolutionError> {
    let dim = Dimension::new(g.dim()).map_err(ResolutionError::Graded)?;
    let proto = ProtoStructure::new(g.lambda(), dim)?;
    Ok(proto.ad()?)
}

/// Cohomology dimensions of the reduced hom-complex per total degree.
pub fn hom_complex_cohomology(g: &LieAlgebraData) -> Result<Vec<usize>, ResolutionError> {
    Ok(hom_complex(g)?.cohomology_dims())
}

/// An element of ⊕ Hom(∧ᵖ𝔤, ∧^q𝔤): one matrix per occupied (p, q), with
/// rows over the ∧^q basis and columns over the ∧^p basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomComplexElement {
    d: usize,
    comps: BTreeMap<(usize, usize), RationalMatrix>,
}

impl HomComplexElement {
    pub fn zero(d: usize) -> Self {
        HomComplexElement {
            d,
            comps: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// The basis map E^Q_P: x_P ↦ x_Q (indices 1-based, strictly ascending).
    pub fn basis_map(d: usize, q_set: &[usize], p_set: &[usize]) -> Result<Self, ResolutionError> {
        let qm = Monomial::new(q_set, &[]).map_err(ResolutionError::Graded)?;
        let pm = Monomial::new(p_set, &[]).map_err(ResolutionError::Graded)?;
        if qm.max_index() > d || pm.max_index() > d {
            return Err(ResolutionError::BadLevel {
                n: qm.max_index().max(pm.max_index()),
                d,
            });
        }
        let (p, q) = (p_set.len(), q_set.len());
        let rows = wedge_basis(d, q);
        let cols = wedge_basis(d, p);
        let mut m = RationalMatrix::zero(rows.len(), cols.len());
        let r = rows.iter().position(|x| *x == qm).expect("basis member");
        let c = cols.iter().position(|x| *x == pm).expect("basis member");
        m.set(r, c, Rat::from_integer(1.into()));
        let mut out = HomComplexElement::zero(d);
        out.comps.insert((p, q), m);
        Ok(out)
    }

    /// The unit class: ∧⁰𝔤 → ∧⁰𝔤, 1 ↦ 1.
    pub fn unit(d: usize) -> Self {
        HomComplexElement::basis_map(d, &[], &[]).expect("unit always exists")
    }

    pub fn component(&self, p: usize, q: usize) -> Option<&RationalMatrix> {
        self.comps.get(&(p, q))
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize), &RationalMatrix)> {
        self.comps.iter()
    }

    pub fn set_component(&mut self, p: usize, q: usize, m: RationalMatrix) {
        if m.is_zero() {
            self.comps.remove(&(p, q));
        } else {
            self.comps.insert((p, q), m);
        }
    }

    pub fn add(&self, other: &HomComplexElement) -> HomComplexElement {
        assert_eq!(self.d, other.d, "mismatched ambient dimensions");
        let mut out = self.clone();
        for (&(p, q), m) in &other.comps {
            let cur = match out.comps.get(&(p, q)) {
                Some(existing) => existing.add(m).expect("same shape"),
                None => m.clone(),
            };
            out.set_component(p, q, cur);
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> HomComplexElement {
        let mut out = HomComplexElement::zero(self.d);
        for (&(p, q), m) in &self.comps {
            out.set_component(p, q, m.scale(s));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// The identification with H: E^Q_P ↦ e_Q f_P.
    pub fn to_element(&self) -> Element {
        let mut out = Element::zero();
        for (&(p, q), m) in &self.comps {
            let rows = wedge_basis(self.d, q);
            let cols = wedge_basis(self.d, p);
            for (r, c, v) in m.iter() {
                let q_idx = rows[r].e_indices();
                let p_idx = cols[c].e_indices();
                let mono = Monomial::new(&q_idx, &p_idx).expect("ascending");
                out.add_term(mono, v.clone());
            }
        }
        out
    }

    /// Inverse identification: e_Q f_P ↦ E^Q_P.
    pub fn from_element(e: &Element, d: usize) -> Result<Self, ResolutionError> {
        let mut out = HomComplexElement::zero(d);
        for (mono, v) in e.terms() {
            if mono.max_index() > d {
                return Err(ResolutionError::BadLevel {
                    n: mono.max_index(),
                    d,
                });
            }
            let q_idx = mono.e_indices();
            let p_idx = mono.f_indices();
            let (p, q) = (p_idx.len(), q_idx.len());
            let rows = wedge_basis(d, q);
            let cols = wedge_basis(d, p);
            let qm = Monomial::new(&q_idx, &[]).expect("ascending");
            let pm = Monomial::new(&p_idx, &[]).expect("ascending");
            let r = rows.iter().position(|x| *x == qm).expect("basis member");
            let c = cols.iter().position(|x| *x == pm).expect("basis member");
            let mut m = out
                .comps
                .remove(&(p, q))
                .unwrap_or_else(|| RationalMatrix::zero(rows.len(), cols.len()));
            m.add_to(r, c, v.clone());
            out.set_component(p, q, m);
        }
        Ok(out)
    }
}

/// Number of transposed pairs across the split N = S1 ⊔ S2 (masks over
/// 1-based indices): pairs (x ∈ S1, y ∈ S2) with x > y.
fn split_inversions(s1: u64, s2: u64) -> usize {
    let mut inv = 0usize;
    let mut m = s1;
    while m != 0 {
        let bit = m.trailing_zeros();
        inv += (s2 & ((1u64 << bit) - 1)).count_ones() as usize;
        m &= m - 1;
    }
    inv
}

/// Yoneda product on the reduced hom-complex over an abelian 𝔤, computed
/// through the unshuffle coproduct on sources and the wedge on targets:
/// (u·v)(x_N) = Σ_{N = S1⊔S2, |S1| = p_u} (−1)^{inv(S1,S2)} (−1)^{p_u q_v}
///              u(x_{S1}) ∧ v(x_{S2}).
/// The sign (−1)^{p_u q_v} is the Koszul cost of carrying v's source slots
/// past u's target slots; with it, the identification E^Q_P ↦ e_Q f_P is a
/// ring isomorphism onto (H, ·).
pub fn yoneda_product(
    u: &HomComplexElement,
    v: &HomComplexElement,
    g: &LieAlgebraData,
) -> Result<HomComplexElement, ResolutionError> {
    if !g.is_abelian() {
        return Err(ResolutionError::NonAbelian);
    }
    let d = g.dim();
    assert!(u.dim() == d && v.dim() == d, "mismatched ambient dimensions");
    let mut out = HomComplexElement::zero(d);
    for (&(pu, qu), mu) in &u.comps {
        for (&(pv, qv), mv) in &v.comps {
            let (p, q) = (pu + pv, qu + qv);
            if p > d || q > d {
                continue;
            }
            let rows = wedge_basis(d, q);
            let cols = wedge_basis(d, p);
            let rows_u = wedge_basis(d, qu);
            let rows_v = wedge_basis(d, qv);
            let cols_u = wedge_basis(d, pu);
            let cols_v = wedge_basis(d, pv);
            let mut acc = out
                .comps
                .remove(&(p, q))
                .unwrap_or_else(|| RationalMatrix::zero(rows.len(), cols.len()));
            for (nc, nmono) in cols.iter().enumerate() {
                let nmask: u64 = nmono
                    .e_indices()
                    .iter()
                    .fold(0, |m, &i| m | (1 << (i - 1)));
                // enumerate S1 ⊆ N with |S1| = pu
                let mut s1 = nmask;
                loop {
                    if s1.count_ones() as usize == pu {
                        let s2 = nmask & !s1;
                        let idx1: Vec<usize> =
                            (0..d).filter(|b| s1 & (1 << b) != 0).map(|b| b + 1).collect();
                        let idx2: Vec<usize> =
                            (0..d).filter(|b| s2 & (1 << b) != 0).map(|b| b + 1).collect();
                        let m1 = Monomial::new(&idx1, &[]).expect("ascending");
                        let m2 = Monomial::new(&idx2, &[]).expect("ascending");
                        let c1 = cols_u.iter().position(|x| *x == m1).expect("basis");
                        let c2 = cols_v.iter().position(|x| *x == m2).expect("basis");
                        let mut sign = split_inversions(s1, s2) + pu * qv;
                        sign %= 2;
                        for (r1, _, a) in mu.iter().filter(|&(_, c, _)| c == c1) {
                            for (r2, _, b) in mv.iter().filter(|&(_, c, _)| c == c2) {
                                let Some((merged, wsign)) =
                                    mul_monomials(&rows_u[r1], &rows_v[r2])
                                else {
                                    continue;
                                };
                                let row =
                                    rows.iter().position(|x| *x == merged).expect("basis");
                                let mut val = a * b;
                                if (sign == 1) ^ (wsign < 0) {
                                    val = -val;
                                }
                                acc.add_to(row, nc, val);
                            }
                        }
                    }
                    if s1 == 0 {
                        break;
                    }
                    s1 = (s1 - 1) & nmask;
                }
            }
            out.set_component(p, q, acc);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Transport through the induced/coinduced adjunction (abelian case)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct TransportReport {
    pub dim: usize,
    pub cap: usize,
    pub lifts_checked: usize,
    pub failures: Vec<String>,
}

impl TransportReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Matrix of the adjunction lift Φ_φ: A⊗∧ᵖ𝔤⊗A → A⊗∧^q𝔤⊗A of a basis map
/// φ = E^Q_P over abelian A = S(V):
/// Φ_φ(a⊗x_N⊗b) = Σ (ab)₍₁₎ ⊗ φ(x_N) ⊗ (ab)₍₂₎,
/// the unique bicomodule map into the cofree bicomodule whose corestriction
/// is φ. Source cap t ≤ cap maps into target cap t ≤ cap − p + q.
fn adjunction_lift_abelian(
    d: usize,
    q_set: &Monomial,
    p_set: &Monomial,
    cap: usize,
) -> RationalMatrix {
    let p = p_set.degree();
    let q = q_set.degree();
    if p > cap {
        return RationalMatrix::zero(0, 0); // the level-p truncated piece is empty
    }
    let src = tetra_basis(d, p, cap);
    let target_cap = cap + q - p; // t' = t − p + q; sources satisfy t ≤ cap
    let dst = tetra_basis(d, q, target_cap);
    let dst_idx = tetra_index(&dst);
    let mut m = RationalMatrix::zero(dst.len(), src.len());
    for (col, (a, nset, b)) in src.iter().enumerate() {
        if nset != p_set {
            continue;
        }
        // ab has exponent a+b; split it binomially into (ab)₍₁₎ ⊗ (ab)₍₂₎
        let total: Vec<usize> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
        let mut splits: Vec<(Vec<usize>, Rat)> = vec![(Vec::new(), Rat::from_integer(1.into()))];
        for &t in &total {
            let mut next = Vec::new();
            for (prefix, coeff) in &splits {
                for s in 0..=t {
                    let mut v = prefix.clone();
                    v.push(s);
                    let bin = binomial(t as u64, s as u64);
                    next.push((v, coeff * Rat::from_integer((bin as i64).into())));
                }
            }
            splits = next;
        }
        for (first, coeff) in splits {
            let second: Vec<usize> = total.iter().zip(first.iter()).map(|(t, s)| t - s).collect();
            let key = (first, *q_set, second);
            if let Some(&row) = dst_idx.get(&key) {
                m.add_to(row, col, coeff);
            }
        }
    }
    m
}

fn abelian_transport_check_impl(
    d: usize,
    cap: usize,
    flip_partial_sign: bool,
) -> Result<TransportReport, ResolutionError> {
    let g = LieAlgebraData::abelian(d)?;
    let mut report = TransportReport {
        dim: d,
        cap,
        lifts_checked: 0,
        failures: Vec::new(),
    };
    for p in 0..=d.min(cap) {
        for q in 0..=d {
            // the lift lands in the level-q piece truncated at t ≤ cap − p + q
            let target_cap = cap + q - p;
            for qm in wedge_basis(d, q) {
                for pm in wedge_basis(d, p) {
                    let lift = adjunction_lift_abelian(d, &qm, &pm, cap);
                    report.lifts_checked += 1;
                    let label = |kind: &str| {
                        format!(
                            "{kind} nonzero at φ = E^{:?}_{:?} (p = {p}, q = {q})",
                            qm.e_indices(),
                            pm.e_indices()
                        )
                    };
                    if p + 1 <= d {
                        let del =
                            induced_differential_impl(&g, p + 1, cap, flip_partial_sign)?;
                        let comp = lift.matmul(&del).expect("chain shapes");
                        if !comp.is_zero() {
                            report.failures.push(label("Φ∘∂"));
                        }
                    }
                    if q + 1 <= d {
                        let dq = coinduced_differential(&g, q, target_cap)?;
                        let comp = dq.matmul(&lift).expect("chain shapes");
                        if !comp.is_zero() {
                            report.failures.push(label("d∘Φ"));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Transports the differential through Hom(Ind −, Coind −) ≅ Hom_k(−, −)
/// for abelian 𝔤 and verifies both composites Φ_φ∘∂ and d∘Φ_φ vanish
/// identically (the full matrices, not merely their adjunction corners) on
/// every basis map φ. This is the computational face of the statement that
/// the reduced complex carries the zero differential in the abelian case.
pub fn abelian_transport_check(d: usize, cap: usize) -> Result<TransportReport, ResolutionError> {
    if d == 0 || d > crate::graded::MAX_DIM {
        return Err(ResolutionError::InvalidDimension(d));
    }
    abelian_transport_check_impl(d, cap, false)
}

/// Same check with one sign of the induced differential deliberately
/// corrupted (the right-action term loses its minus); exists to demonstrate
/// the check's sensitivity and must fail for every d, cap ≥ 1.
pub fn abelian_transport_check_mutated(
    d: usize,
    cap: usize,
) -> Result<TransportReport, ResolutionError> {
    if d == 0 || d > crate::graded::MAX_DIM {
        return Err(ResolutionError::InvalidDimension(d));
    }
    abelian_transport_check_impl(d, cap, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::bracket;
    use crate::scalar::{int, rat};

    fn exp(v: &[usize]) -> Vec<usize> {
        v.to_vec()
    }

    #[test]
    fn builtins_validate() {
        for name in LieAlgebraData::BUILTIN_NAMES {
            let g = LieAlgebraData::builtin(name).unwrap();
            assert!(g.constants().is_jacobi(), "{name} must satisfy Jacobi");
        }
        assert!(matches!(
            LieAlgebraData::builtin("nope"),
            Err(ResolutionError::UnknownBuiltin(_))
        ));
    }

    #[test]
    fn non_jacobi_constants_rejected_and_flagged() {
        // [x1,x2] = x3, [x2,x3] = x1, [x3,x1] = x1 (so c^1_{13} = −1)
        let c = StructureConstants::from_lower_triangle(
            3,
            &[
                (1, 2, 3, int(1)),
                (2, 3, 1, int(1)),
                (1, 3, 1, int(-1)),
            ],
        )
        .unwrap();
        assert!(!c.is_jacobi());
        let jac = c.jacobiator();
        assert!(!jac.is_empty());
        assert!(matches!(
            LieAlgebraData::new("bad", c.clone()),
            Err(ResolutionError::JacobiFailure { .. })
        ));
        // λ route agrees with the oracle
        let lam = lambda_element(&c);
        assert!(!bracket(&lam, &lam).is_zero());
    }

    #[test]
    fn lambda_mc_iff_jacobi_on_random_constants() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut jacobi_seen = 0;
        let mut non_jacobi_seen = 0;
        for _ in 0..40 {
            let d = 3;
            let mut entries = Vec::new();
            for i in 1..=d {
                for j in (i + 1)..=d {
                    for k in 1..=d {
                        let v: i64 = rng.gen_range(-2..=2);
                        if v != 0 {
                            entries.push((i, j, k, int(v)));
                        }
                    }
                }
            }
            let c = StructureConstants::from_lower_triangle(d, &entries).unwrap();
            let lam = lambda_element(&c);
            let mc = bracket(&lam, &lam).is_zero();
            assert_eq!(mc, c.is_jacobi(), "[λ,λ] = 0 must match the Jacobi oracle");
            if c.is_jacobi() {
                jacobi_seen += 1;
            } else {
                non_jacobi_seen += 1;
            }
        }
        // two-dimensional constants are always Jacobi: both classes need d=3
        assert!(non_jacobi_seen > 0);
        // crafted Jacobi witnesses if randomness found none
        if jacobi_seen == 0 {
            for name in ["abelian3", "heisenberg3", "sl2"] {
                let g = LieAlgebraData::builtin(name).unwrap();
                let lam = g.lambda();
                assert!(bracket(&lam, &lam).is_zero());
            }
        }
    }

    #[test]
    fn d2_constants_always_jacobi() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let entries: Vec<_> = (1..=2)
                .map(|k| (1, 2, k, int(rng.gen_range(-3..=3))))
                .collect();
            let c = StructureConstants::from_lower_triangle(2, &entries).unwrap();
            assert!(c.is_jacobi());
            let lam = lambda_element(&c);
            assert!(bracket(&lam, &lam).is_zero());
        }
    }

    #[test]
    fn pbw_straightening_frozen_values() {
        let g = LieAlgebraData::builtin("nonabelian2").unwrap();
        let c = g.constants();
        // x2·x1 = x1x2 − x2
        let r = c.left_mul(1, &exp(&[1, 0]));
        assert_eq!(r.get(&exp(&[1, 1])), Some(&int(1)));
        assert_eq!(r.get(&exp(&[0, 1])), Some(&int(-1)));
        assert_eq!(r.len(), 2);
        // x1·x2 stays ordered
        let r = c.left_mul(0, &exp(&[0, 1]));
        assert_eq!(r.get(&exp(&[1, 1])), Some(&int(1)));
        assert_eq!(r.len(), 1);
        // right products: x2 x1 again via the right recursion
        let r = c.right_mul(&exp(&[0, 1]), 0);
        assert_eq!(r.get(&exp(&[1, 1])), Some(&int(1)));
        assert_eq!(r.get(&exp(&[0, 1])), Some(&int(-1)));

        let g = LieAlgebraData::builtin("sl2").unwrap();
        // f·e = ef − h
        let r = g.constants().left_mul(1, &exp(&[1, 0, 0]));
        assert_eq!(r.get(&exp(&[1, 1, 0])), Some(&int(1)));
        assert_eq!(r.get(&exp(&[0, 0, 1])), Some(&int(-1)));
    }

    #[test]
    fn pbw_associativity_spot_checks() {
        // (x_i·m)·x_j = x_i·(m·x_j) for all generators and small monomials
        for name in ["nonabelian2", "heisenberg3", "sl2"] {
            let g = LieAlgebraData::builtin(name).unwrap();
            let c = g.constants();
            let d = g.dim();
            for m in exponent_vectors(d, 2) {
                for i in 0..d {
                    for j in 0..d {
                        let mut lhs = UElem::new();
                        for (mm, v) in c.left_mul(i, &m) {
                            for (mmm, vv) in c.right_mul(&mm, j) {
                                u_add(&mut lhs, mmm, &v * &vv);
                            }
                        }
                        u_cleanup(&mut lhs);
                        let mut rhs = UElem::new();
                        for (mm, v) in c.right_mul(&m, j) {
                            for (mmm, vv) in c.left_mul(i, &mm) {
                                u_add(&mut rhs, mmm, &v * &vv);
                            }
                        }
                        u_cleanup(&mut rhs);
                        assert_eq!(lhs, rhs, "{name}: x_{i}·m·x_{j} at m = {m:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn induced_differential_abelian_example() {
        // ∂(1⊗x⊗1) = x⊗1⊗1 − 1⊗1⊗x
        let g = LieAlgebraData::abelian(1).unwrap();
        let m = induced_differential(&g, 1, 2).unwrap();
        let src = tetra_basis(1, 1, 2);
        let dst = tetra_basis(1, 0, 2);
        let col = src
            .iter()
            .position(|(a, _, b)| deg(a) == 0 && deg(b) == 0)
            .unwrap();
        let unit = Monomial::unit();
        let row_x_left = dst
            .iter()
            .position(|(a, w, b)| a == &exp(&[1]) && *w == unit && deg(b) == 0)
            .unwrap();
        let row_x_right = dst
            .iter()
            .position(|(a, w, b)| deg(a) == 0 && *w == unit && b == &exp(&[1]))
            .unwrap();
        assert_eq!(m.get(row_x_left, col), int(1));
        assert_eq!(m.get(row_x_right, col), int(-1));
    }

    #[test]
    fn induced_differential_nonabelian_bracket_term() {
        // ∂(1⊗x1∧x2⊗1) contains −1⊗x2⊗1 from the bracket sum
        let g = LieAlgebraData::builtin("nonabelian2").unwrap();
        let m = induced_differential(&g, 2, 2).unwrap();
        let src = tetra_basis(2, 2, 2);
        let dst = tetra_basis(2, 1, 2);
        let x12 = Monomial::new(&[1, 2], &[]).unwrap();
        let col = src
            .iter()
            .position(|(a, w, b)| deg(a) == 0 && *w == x12 && deg(b) == 0)
            .unwrap();
        let x2 = Monomial::new(&[2], &[]).unwrap();
        let row = dst
            .iter()
            .position(|(a, w, b)| deg(a) == 0 && *w == x2 && deg(b) == 0)
            .unwrap();
        assert_eq!(m.get(row, col), int(-1));
    }

    #[test]
    fn induced_differential_squares_to_zero() {
        for (name, d) in [("abelian2", 2), ("nonabelian2", 2), ("heisenberg3", 3)] {
            let g = LieAlgebraData::builtin(name).unwrap();
            for cap in 2..=3 {
                for n in 2..=d {
                    let d_n = induced_differential(&g, n, cap).unwrap();
                    let d_n1 = induced_differential(&g, n - 1, cap).unwrap();
                    let comp = d_n1.matmul(&d_n).unwrap();
                    assert!(comp.is_zero(), "∂² ≠ 0 for {name}, n = {n}, cap = {cap}");
                }
            }
        }
    }

    #[test]
    fn coinduced_differential_examples() {
        // Δ(x²) = x²⊗1 + 2x⊗x + 1⊗x²; projecting gives d(x²⊗1⊗1) = 2x⊗x⊗1
        let g = LieAlgebraData::abelian(1).unwrap();
        let m = coinduced_differential(&g, 0, 2).unwrap();
        let src = tetra_basis(1, 0, 2);
        let dst = tetra_basis(1, 1, 2);
        let col = src
            .iter()
            .position(|(a, _, b)| a == &exp(&[2]) && deg(b) == 0)
            .unwrap();
        let x = Monomial::new(&[1], &[]).unwrap();
        let row = dst
            .iter()
            .position(|(a, w, b)| a == &exp(&[1]) && *w == x && deg(b) == 0)
            .unwrap();
        assert_eq!(m.get(row, col), int(2));

        // a = b = 1 maps to zero
        let col = src
            .iter()
            .position(|(a, _, b)| deg(a) == 0 && deg(b) == 0)
            .unwrap();
        for r in 0..dst.len() {
            assert_eq!(m.get(r, col), int(0));
        }
    }

    #[test]
    fn coinduced_differential_squares_to_zero() {
        for (name, d) in [("abelian1", 1usize), ("abelian2", 2), ("nonabelian2", 2)] {
            let g = LieAlgebraData::builtin(name).unwrap();
            for cap in 2..=3 {
                for n in 0..d.saturating_sub(1) {
                    let d_n = coinduced_differential(&g, n, cap).unwrap();
                    let d_n1 = coinduced_differential(&g, n + 1, cap).unwrap();
                    let comp = d_n1.matmul(&d_n).unwrap();
                    assert!(comp.is_zero(), "d² ≠ 0 for {name}, n = {n}, cap = {cap}");
                }
            }
        }
    }

    #[test]
    fn hom_complex_abelian_is_zero_differential() {
        let g = LieAlgebraData::abelian(2).unwrap();
        let complex = hom_complex(&g).unwrap();
        for m in complex.differentials() {
            assert!(m.is_zero());
        }
        assert_eq!(complex.cohomology_dims(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn hom_complex_nonabelian_nonzero_square_zero() {
        let g = LieAlgebraData::builtin("nonabelian2").unwrap();
        // construction succeeds ⇒ d² = 0 was verified by the complex type
        let complex = hom_complex(&g).unwrap();
        assert!(complex.differentials().iter().any(|m| !m.is_zero()));
        let dims = complex.cohomology_dims();
        let euler: i64 = dims
            .iter()
            .enumerate()
            .map(|(n, &h)| if n % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum();
        assert_eq!(euler, 0);
    }

    #[test]
    fn hom_complex_cohomology_frozen_dims() {
        // abelian: zero differential, cohomology is all of ∧𝔤⊗∧𝔤*;
        // the rest were computed once with this implementation and frozen.
        let expect: [(&str, &[usize]); 6] = [
            ("abelian1", &[1, 2, 1]),
            ("abelian2", &[1, 4, 6, 4, 1]),
            ("abelian3", &[1, 6, 15, 20, 15, 6, 1]),
            ("nonabelian2", &[1, 1, 0, 1, 1]),
            ("heisenberg3", &[1, 3, 8, 12, 8, 3, 1]),
            ("sl2", &[1, 0, 0, 2, 0, 0, 1]),
        ];
        for (name, dims) in expect {
            let g = LieAlgebraData::builtin(name).unwrap();
            assert_eq!(hom_complex_cohomology(&g).unwrap(), dims, "{name}");
        }
    }

    #[test]
    fn yoneda_worked_example_and_unit() {
        let g = LieAlgebraData::abelian(1).unwrap();
        let u = HomComplexElement::basis_map(1, &[1], &[]).unwrap(); // class of e1
        let v = HomComplexElement::basis_map(1, &[], &[1]).unwrap(); // class of f1
        let uv = yoneda_product(&u, &v, &g).unwrap();
        let expect = Element::from_monomial(Monomial::new(&[1], &[1]).unwrap());
        assert_eq!(uv.to_element(), expect);
        // reverse order picks up the graded sign
        let vu = yoneda_product(&v, &u, &g).unwrap();
        assert_eq!(vu.to_element(), -&expect);
        // unit law
        let one = HomComplexElement::unit(1);
        assert_eq!(yoneda_product(&one, &v, &g).unwrap(), v);
        assert_eq!(yoneda_product(&u, &one, &g).unwrap(), u);
    }

    #[test]
    fn yoneda_matches_graded_multiplication_d2() {
        let g = LieAlgebraData::abelian(2).unwrap();
        let dim = Dimension::new(2).unwrap();
        let mut basis = Vec::new();
        for n in 0..=dim.top_degree() {
            basis.extend(crate::graded::enumerate_basis(dim, n));
        }
        for a in &basis {
            for b in &basis {
                let ea = Element::from_monomial(*a);
                let eb = Element::from_monomial(*b);
                let u = HomComplexElement::from_element(&ea, 2).unwrap();
                let v = HomComplexElement::from_element(&eb, 2).unwrap();
                let uv = yoneda_product(&u, &v, &g).unwrap();
                assert_eq!(uv.to_element(), &ea * &eb, "mismatch at {a}·{b}");
            }
        }
    }

    #[test]
    fn yoneda_rejects_nonabelian() {
        let g = LieAlgebraData::builtin("nonabelian2").unwrap();
        let u = HomComplexElement::unit(2);
        assert!(matches!(
            yoneda_product(&u, &u, &g),
            Err(ResolutionError::NonAbelian)
        ));
    }

    #[test]
    fn transport_check_vanishes_abelian() {
        for (d, cap) in [(1, 2), (2, 2)] {
            let r = abelian_transport_check(d, cap).unwrap();
            assert!(r.passed(), "failures: {:?}", r.failures);
            assert!(r.lifts_checked > 0);
        }
    }

    #[test]
    fn transport_check_catches_sign_mutation() {
        let r = abelian_transport_check_mutated(1, 2).unwrap();
        assert!(!r.passed());
        assert!(r.failures.iter().any(|f| f.contains("Φ∘∂")));
    }

    #[test]
    fn lie_json_round_trip_and_rejection() {
        let good = r#"{"name": "heis", "d": 3, "c": [[1, 2, 3, "1"]]}"#;
        let g: LieAlgebraData = serde_json::from_str(good).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.name(), "heis");
        assert!(!g.is_abelian());

        let bad = r#"{"d": 3, "c": [[1,2,3,"1"],[2,3,1,"1"],[1,3,1,"-1"]]}"#;
        let err = serde_json::from_str::<LieAlgebraData>(bad).unwrap_err();
        assert!(err.to_string().contains("Jacobi"), "got: {err}");

        let upper = r#"{"d": 2, "c": [[2, 1, 1, "1"]]}"#;
        assert!(serde_json::from_str::<LieAlgebraData>(upper).is_err());
    }

    #[test]
    fn exponent_vector_and_basis_counts() {
        // #{γ : |γ| ≤ cap} = C(d + cap, d)
        for d in 1..=3usize {
            for cap in 0..=3usize {
                let got = exponent_vectors(d, cap).len() as u64;
                assert_eq!(got, binomial((d + cap) as u64, d as u64));
            }
        }
        assert_eq!(wedge_basis(3, 2).len(), 3);
        assert_eq!(wedge_basis(3, 4).len(), 0);
        // tetra basis respects the cap
        for (a, w, b) in tetra_basis(2, 1, 3) {
            assert!(deg(&a) + w.degree() + deg(&b) <= 3);
        }
    }

    #[test]
    fn scaled_constants_still_work() {
        // rational structure constants pass through straightening
        let c = StructureConstants::from_lower_triangle(2, &[(1, 2, 2, rat(1, 2))]).unwrap();
        let g = LieAlgebraData::new("half", c).unwrap();
        let r = g.constants().left_mul(1, &exp(&[1, 0]));
        assert_eq!(r.get(&exp(&[0, 1])), Some(&rat(-1, 2)));
        let m1 = induced_differential(&g, 2, 3).unwrap();
        let m0 = induced_differential(&g, 1, 3).unwrap();
        assert!(m0.matmul(&m1).unwrap().is_zero());
    }
}
