//! The linear-algebra core of the intrinsic-formality argument: the degree
//! census on one-cochains of the first filtration page, the Chevalley–
//! Eilenberg-type differential Q_l acting there, the constructive boundary
//! solving Q_l(g) = f₁ against the canonical pairing, and the gl(V)-
//! invariance computation that pins every invariant symmetric form on
//! W = V⊕V* to a multiple of that pairing.
//!
//! Cochains at filtration p are linear maps S^{p+1}(W[3]) → S(W)[3]; the
//! shifted generators are even, so the source really is a symmetric power
//! and its basis is the set of size-(p+1) multisets over the 2d generators.

use crate::bracket::{bracket, pairing_gram};
use crate::graded::{enumerate_basis, Dimension, Element, Generator, Monomial};
use crate::linalg::{LinalgError, RationalMatrix, SolveOutcome};
use crate::scalar::{format_rat, Rat};
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormalityError {
    #[error("form must be a square matrix over W (2d rows); got {rows}×{cols}")]
    WrongShape { rows: usize, cols: usize },
    #[error("form is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("no boundary exists: the Gram matrix does not reach column {column} of the form")]
    NoBoundary { column: usize },
    #[error(
        "substitution check failed at generator pair ({a}, {b}): expected {expected}, got {got}"
    )]
    SubstitutionFailed {
        a: usize,
        b: usize,
        expected: String,
        got: String,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Filtration-p one-cochains in total degree 1 land in S^{4−2(p+1)}(W);
/// a negative power means the space is zero, which is what kills every
/// obstruction beyond p = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeCensus {
    pub p: usize,
    pub target_power: i64,
    pub vanishes: bool,
}

pub fn degree_census(p: usize) -> DegreeCensus {
    let target_power = 4 - 2 * (p as i64 + 1);
    DegreeCensus {
        p,
        target_power,
        vanishes: target_power < 0,
    }
}

/// Target symmetric power of a filtration-p cochain of the given total
/// degree: sources sit in degree −2(p+1), targets in S^k(W)[3], so
/// k = degree + 3 − 2(p+1).
pub fn e1_target_power(p: usize, total_degree: i64) -> i64 {
    total_degree + 3 - 2 * (p as i64 + 1)
}

/// Size-`size` multisets over the 2d generators of W, as nondecreasing
/// vectors of 0-based generator indices (0..d are e's, d..2d are f's), in
/// lexicographic order.
pub fn w_multisets(d: Dimension, size: usize) -> Vec<Vec<usize>> {
    let n = 2 * d.get();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for g in start..n {
            cur.push(g);
            rec(n, size, g, cur, out);
            cur.pop();
        }
    }
    rec(n, size, 0, &mut cur, &mut out);
    out
}

fn w_generator(idx: usize, d: Dimension) -> Generator {
    let dd = d.get();
    if idx < dd {
        Generator::E(idx + 1)
    } else {
        Generator::F(idx - dd + 1)
    }
}

fn target_basis(d: Dimension, power: i64) -> Vec<Monomial> {
    if power < 0 {
        Vec::new()
    } else {
        enumerate_basis(d, power as usize)
    }
}

/// Dimension of the filtration-p cochain space in the given total degree.
pub fn e1_dim(p: usize, total_degree: i64, d: Dimension) -> usize {
    w_multisets(d, p + 1).len() * target_basis(d, e1_target_power(p, total_degree)).len()
}

/// Matrix of Q_l from filtration-p cochains of the given total degree to
/// filtration-(p+1) cochains of total degree + 1:
/// (df)(a₁⋯a_{p+2}) = Σᵢ [aᵢ, f(a₁⋯âᵢ⋯a_{p+2})].
/// The printed version of this formula carries the sign
/// −(−1)^{i+|aᵢ|(|a₁|+⋯+|a_{i−1}|)}; for odd generator degrees it collapses
/// to +1 in every term, and that is the only parity assignment under which
/// the expression is well defined on symmetric arguments, so the collapsed
/// form is what we compute. Cochain vectors are indexed multiset-major:
/// (multiset index)·(target basis size) + (target monomial index).
pub fn ce_differential(p: usize, total_degree: i64, d: Dimension) -> RationalMatrix {
    let src_msets = w_multisets(d, p + 1);
    let tgt_msets = w_multisets(d, p + 2);
    let k_src = e1_target_power(p, total_degree);
    let src_t = target_basis(d, k_src);
    let tgt_t = target_basis(d, k_src - 1);
    let mut m = RationalMatrix::zero(tgt_msets.len() * tgt_t.len(), src_msets.len() * src_t.len());
    if src_t.is_empty() || tgt_t.is_empty() {
        return m;
    }
    let n = 2 * d.get();
    // [w, t] for every generator w and source target monomial t
    let gen_elements: Vec<Element> = (0..n)
        .map(|g| Element::from_generator(w_generator(g, d)))
        .collect();
    let brackets: Vec<Vec<Element>> = (0..n)
        .map(|g| {
            src_t
                .iter()
                .map(|t| bracket(&gen_elements[g], &Element::from_monomial(*t)))
                .collect()
        })
        .collect();
    for (mi, mset) in src_msets.iter().enumerate() {
        for w in 0..n {
            let mut nset = mset.clone();
            let pos = nset.partition_point(|&x| x < w);
            nset.insert(pos, w);
            let mult = nset.iter().filter(|&&x| x == w).count();
            let ni = tgt_msets
                .binary_search(&nset)
                .expect("insertion stays in the enumeration");
            for ti in 0..src_t.len() {
                for (smono, c) in brackets[w][ti].terms() {
                    let si = tgt_t
                        .binary_search(smono)
                        .expect("bracket lands in the target degree");
                    let row = ni * tgt_t.len() + si;
                    let col = mi * src_t.len() + ti;
                    m.add_to(row, col, c * Rat::from_integer((mult as i64).into()));
                }
            }
        }
    }
    m
}

/// A symmetric bilinear form on W = V⊕V*: a total-degree-1 cochain
/// f₁: S²(W) → k, stored as its 2d×2d Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    m: RationalMatrix,
}

impl SymmetricForm {
    pub fn new(m: RationalMatrix) -> Result<Self, FormalityError> {
        if m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0 {
            return Err(FormalityError::WrongShape {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        for (r, c, v) in m.iter() {
            if *v != m.get(c, r) {
                return Err(FormalityError::Asymmetric { row: r, col: c });
            }
        }
        Ok(SymmetricForm { m })
    }

    pub fn zero(d: Dimension) -> Self {
        SymmetricForm {
            m: RationalMatrix::zero(2 * d.get(), 2 * d.get()),
        }
    }

    /// The canonical pairing form: [e_i, f_j] = δ_ij, symmetric on W.
    pub fn pairing(d: Dimension) -> Self {
        SymmetricForm {
            m: pairing_gram(d),
        }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.m
    }

    /// Half the ambient dimension of W, i.e. dim V.
    pub fn dim_v(&self) -> usize {
        self.m.rows() / 2
    }

    /// The cochain vector over the size-2 multiset basis: entry at {i, j}
    /// is F(w_i, w_j).
    pub fn to_cochain_vec(&self, d: Dimension) -> Vec<Rat> {
        w_multisets(d, 2)
            .iter()
            .map(|ms| self.m.get(ms[0], ms[1]))
            .collect()
    }
}

/// The cochain vector of a degree-0 endomorphism g: W → W over the size-1
/// multiset basis paired with the degree-1 monomial basis. The endomorphism
/// rows/columns use the W order (e_1…e_d, f_1…f_d) while the monomial basis
/// sorts all f's before all e's, so the rows are permuted accordingly.
pub fn endo_to_cochain_vec(g: &RationalMatrix, d: Dimension) -> Vec<Rat> {
    let n = 2 * d.get();
    assert!(g.rows() == n && g.cols() == n, "endomorphism must be 2d×2d");
    let w_of: Vec<usize> = enumerate_basis(d, 1)
        .iter()
        .map(|m| match m.e_indices().first() {
            Some(&i) => i - 1,
            None => d.get() + m.f_indices()[0] - 1,
        })
        .collect();
    let mut out = Vec::with_capacity(n * n);
    for col in 0..n {
        for ti in 0..n {
            out.push(g.get(w_of[ti], col));
        }
    }
    out
}

fn solve_against_gram(
    f1: &SymmetricForm,
    gram: &RationalMatrix,
) -> Result<RationalMatrix, FormalityError> {
    let n = gram.rows();
    let half = Rat::new(1.into(), 2.into());
    let mut g = RationalMatrix::zero(n, n);
    for col in 0..n {
        let rhs: Vec<Rat> = (0..n).map(|r| f1.m.get(r, col) * &half).collect();
        match gram.solve(&rhs)? {
            SolveOutcome::Solution(x) => {
                for (r, v) in x.into_iter().enumerate() {
                    if !v.is_zero() {
                        g.set(r, col, v);
                    }
                }
            }
            SolveOutcome::NoSolution => return Err(FormalityError::NoBoundary { column: col }),
        }
    }
    Ok(g)
}

/// Constructs g: W → W with [a, g(b)] + [b, g(a)] = f₁(a, b) for all
/// generators a, b, by solving B·g = ½f₁ against the Gram matrix B of the
/// pairing; the identity is then re-verified by substituting actual
/// brackets before g is returned (an independent route: the solve uses the
/// Gram matrix, the check uses the bracket itself).
pub fn boundary_construct(
    f1: &SymmetricForm,
    d: Dimension,
) -> Result<RationalMatrix, FormalityError> {
    if f1.dim_v() != d.get() {
        return Err(FormalityError::WrongShape {
            rows: f1.m.rows(),
            cols: f1.m.cols(),
        });
    }
    let gram = pairing_gram(d);
    let g = solve_against_gram(f1, &gram)?;
    let n = 2 * d.get();
    let gens: Vec<Element> = (0..n)
        .map(|i| Element::from_generator(w_generator(i, d)))
        .collect();
    let images: Vec<Element> = (0..n)
        .map(|col| {
            let mut img = Element::zero();
            for row in 0..n {
                let v = g.get(row, col);
                if !v.is_zero() {
                    img = &img + &gens[row].scale(&v);
                }
            }
            img
        })
        .collect();
    let unit = Monomial::unit();
    for a in 0..n {
        for b in 0..n {
            let lhs = &bracket(&gens[a], &images[b]) + &bracket(&gens[b], &images[a]);
            let got = lhs.coefficient(&unit);
            let expected = f1.m.get(a, b);
            if got != expected {
                return Err(FormalityError::SubstitutionFailed {
                    a,
                    b,
                    expected: format_rat(&expected),
                    got: format_rat(&got),
                });
            }
        }
    }
    Ok(g)
}

/// boundary_construct against an arbitrary Gram matrix in place of the
/// pairing; with a degenerate matrix the solve fails for suitable forms,
/// which is the intended demonstration that nondegeneracy of the pairing
/// is what the construction consumes.
pub fn boundary_construct_with_gram(
    f1: &SymmetricForm,
    gram: &RationalMatrix,
) -> Result<RationalMatrix, FormalityError> {
    if gram.rows() != f1.m.rows() || gram.cols() != f1.m.cols() {
        return Err(FormalityError::WrongShape {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    let g = solve_against_gram(f1, gram)?;
    // verify B·g + (B·g)ᵀ = f₁ against the supplied Gram matrix
    let bg = gram.matmul(&g)?;
    let sym = bg.add(&bg.transpose())?;
    for r in 0..sym.rows() {
        for c in 0..sym.cols() {
            if sym.get(r, c) != f1.m.get(r, c) {
                return Err(FormalityError::SubstitutionFailed {
                    a: r,
                    b: c,
                    expected: format_rat(&f1.m.get(r, c)),
                    got: format_rat(&sym.get(r, c)),
                });
            }
        }
    }
    Ok(g)
}

/// A random symmetric form with small integer entries, for property suites.
pub fn random_symmetric_form<R: Rng>(d: Dimension, rng: &mut R) -> SymmetricForm {
    let n = 2 * d.get();
    let mut m = RationalMatrix::zero(n, n);
    for r in 0..n {
        for c in r..n {
            let v: i64 = rng.gen_range(-3..=3);
            if v != 0 {
                m.set(r, c, Rat::from_integer(v.into()));
                if r != c {
                    m.set(c, r, Rat::from_integer(v.into()));
                }
            }
        }
    }
    SymmetricForm::new(m).expect("constructed symmetric")
}

#[derive(Debug, Clone, Serialize)]
pub struct H1Report {
    pub dim: usize,
    pub census: Vec<DegreeCensus>,
    /// census says the space at filtration p is zero exactly for p > 1
    pub census_consistent: bool,
    /// number of basis symmetric forms put through boundary_construct
    pub forms_checked: usize,
    /// each boundary was also recomputed through the Q_l matrix route
    pub matrix_route_agrees: bool,
    pub failures: Vec<String>,
}

impl H1Report {
    pub fn passed(&self) -> bool {
        self.census_consistent && self.matrix_route_agrees && self.failures.is_empty()
    }
}

/// The computational content of the vanishing hypothesis on first
/// cohomology: every total-degree-1 cochain has f_p = 0 forced for p > 1
/// (degree census), membership in the positive filtration forces f₀ = 0,
/// and every remaining piece f₁ is exhibited as a boundary Q_l(g). Checks
/// every basis symmetric form; each solution is verified both by bracket
/// substitution (inside boundary_construct) and through the assembled Q_l
/// matrix at filtration 0.
pub fn h1_vanishing_check(d: Dimension) -> H1Report {
    let census: Vec<DegreeCensus> = (0..=5).map(degree_census).collect();
    let census_consistent = census.iter().all(|c| c.vanishes == (c.p > 1));
    let n = 2 * d.get();
    let q0 = ce_differential(0, 0, d);
    let mut failures = Vec::new();
    let mut forms_checked = 0;
    let mut matrix_route_agrees = true;
    for r in 0..n {
        for c in r..n {
            let mut fm = RationalMatrix::zero(n, n);
            fm.set(r, c, Rat::from_integer(1.into()));
            if r != c {
                fm.set(c, r, Rat::from_integer(1.into()));
            }
            let form = SymmetricForm::new(fm).expect("symmetric by construction");
            forms_checked += 1;
            match boundary_construct(&form, d) {
                Ok(g) => {
                    let gv = endo_to_cochain_vec(&g, d);
                    let image = q0.mul_vec(&gv).expect("shape");
                    if image != form.to_cochain_vec(d) {
                        matrix_route_agrees = false;
                        failures.push(format!(
                            "Q_l-matrix image of g differs from the form at basis pair ({r}, {c})"
                        ));
                    }
                }
                Err(e) => failures.push(format!("basis form ({r}, {c}): {e}")),
            }
        }
    }
    H1Report {
        dim: d.get(),
        census,
        census_consistent,
        forms_checked,
        matrix_route_agrees,
        failures,
    }
}

/// Matrix of the elementary gl(V) generator E_{ab} (1-based a, b) acting on
/// W: E_{ab}·e_i = δ_{ib} e_a and E_{ab}·f_j = −δ_{ja} f_b.
pub fn gl_action_matrix(d: Dimension, a: usize, b: usize) -> RationalMatrix {
    let dd = d.get();
    assert!(a >= 1 && a <= dd && b >= 1 && b <= dd, "generator index in 1..=d");
    let n = 2 * dd;
    let mut m = RationalMatrix::zero(n, n);
    m.set(a - 1, b - 1, Rat::from_integer(1.into()));
    m.set(dd + b - 1, dd + a - 1, Rat::from_integer((-1).into()));
    m
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantFormReport {
    pub dim: usize,
    pub space_dim: usize,
    /// basis of invariant symmetric forms, entries as rational strings
    pub basis: Vec<Vec<Vec<String>>>,
    pub proportional_to_pairing: bool,
}

/// Computes the space of symmetric bilinear forms on W annihilated by the
/// infinitesimal gl(V) action, i.e. F with F(Xa, b) + F(a, Xb) = 0 for
/// every elementary X. Returns its dimension and basis and whether the
/// basis is spanned by the canonical pairing (expected: dimension 1, and
/// it is).
pub fn invariant_form_space(d: Dimension) -> InvariantFormReport {
    let dd = d.get();
    let n = 2 * dd;
    // unknowns: upper-triangle entries u_{ij}, i ≤ j, lex order
    let mut unknown = BTreeIndex::new();
    for i in 0..n {
        for j in i..n {
            unknown.push((i, j));
        }
    }
    let cols = unknown.len();
    let rows = dd * dd * cols;
    let mut sys = RationalMatrix::zero(rows, cols);
    let mut row = 0;
    for a in 1..=dd {
        for b in 1..=dd {
            let x = gl_action_matrix(d, a, b);
            // (XᵀF + FX)_{ij} = Σ_k X_{ki} u_{(k,j)} + Σ_k u_{(i,k)} X_{kj}
            for &(i, j) in &unknown.keys {
                for (k, ki, v) in x.iter() {
                    // entry X_{k,ki}: contributes to (i, j) when ki == i or ki == j
                    if ki == i {
                        let (p, q) = if k <= j { (k, j) } else { (j, k) };
                        sys.add_to(row, unknown.index((p, q)), v.clone());
                    }
                    if ki == j {
                        let (p, q) = if i <= k { (i, k) } else { (k, i) };
                        sys.add_to(row, unknown.index((p, q)), v.clone());
                    }
                }
                row += 1;
            }
        }
    }
    let kernel = sys.kernel_basis();
    let gram = pairing_gram(d);
    let mut basis_matrices = Vec::new();
    let mut proportional = kernel.len() == 1;
    for vec in &kernel {
        let mut f = RationalMatrix::zero(n, n);
        for (idx, &(i, j)) in unknown.keys.iter().enumerate() {
            if !vec[idx].is_zero() {
                f.set(i, j, vec[idx].clone());
                if i != j {
                    f.set(j, i, vec[idx].clone());
                }
            }
        }
        if proportional {
            // f must be c·gram for one rational c
            let anchor = f.get(0, dd);
            if anchor.is_zero() {
                proportional = false;
            } else {
                let scaled = f.scale(&(Rat::from_integer(1.into()) / anchor));
                if scaled != gram {
                    proportional = false;
                }
            }
        }
        basis_matrices.push(f);
    }
    InvariantFormReport {
        dim: dd,
        space_dim: kernel.len(),
        basis: basis_matrices
            .iter()
            .map(|m| {
                (0..n)
                    .map(|r| (0..n).map(|c| format_rat(&m.get(r, c))).collect())
                    .collect()
            })
            .collect(),
        proportional_to_pairing: proportional,
    }
}

struct BTreeIndex {
    keys: Vec<(usize, usize)>,
}

impl BTreeIndex {
    fn new() -> Self {
        BTreeIndex { keys: Vec::new() }
    }
    fn push(&mut self, k: (usize, usize)) {
        self.keys.push(k);
    }
    fn len(&self) -> usize {
        self.keys.len()
    }
    fn index(&self, k: (usize, usize)) -> usize {
        self.keys.binary_search(&k).expect("known unknown")
    }
}
