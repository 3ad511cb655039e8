//! Exact linear algebra over ℚ: rank, kernel bases, and linear solves via
//! fraction-free (Bareiss) elimination on an integerized copy of the matrix.
//!
//! Every intermediate quantity stays an exact integer or rational; nothing
//! here ever rounds. Matrices are stored sparsely since the differentials in
//! the chain complexes we build are overwhelmingly zero.

use crate::scalar::{format_rat, parse_rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry ({0}, {1}) outside a {2}x{3} matrix")]
    IndexOutOfRange(usize, usize, usize, usize),
    #[error("dimension mismatch: left is {0}x{1}, right is {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
}

/// Sparse matrix over ℚ with a fixed shape. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Vec<Rat>),
    NoSolution,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_nonzero(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            out.set(c, r, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (r, c, v) in self.iter() {
            out.set(r, c, v * s);
        }
        out
    }

    pub fn add(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::ShapeMismatch(
                self.rows, self.cols, rhs.rows, rhs.cols,
            ));
        }
        let mut out = self.clone();
        for (r, c, v) in rhs.iter() {
            out.add_to(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        self.add(&rhs.scale(&-Rat::one()))
    }

    pub fn matmul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch(
                self.rows, self.cols, rhs.rows, rhs.cols,
            ));
        }
        // group the right factor by row so the product walks only nonzeros
        let mut rhs_rows: BTreeMap<usize, Vec<(usize, &Rat)>> = BTreeMap::new();
        for (r, c, v) in rhs.iter() {
            rhs_rows.entry(r).or_default().push((c, v));
        }
        let mut out = RationalMatrix::zero(self.rows, rhs.cols);
        for (r, k, a) in self.iter() {
            if let Some(row) = rhs_rows.get(&k) {
                for &(c, b) in row {
                    out.add_to(r, c, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, v.len(), 1));
        }
        let mut out = vec![Rat::zero(); self.rows];
        for (r, c, a) in self.iter() {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        Ok(out)
    }

    /// Dense row-major copy (small matrices only; used by elimination).
    fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut rows = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            rows[r][c] = v.clone();
        }
        rows
    }

    pub fn rank(&self) -> usize {
        echelon(self.to_dense()).pivots.len()
    }

    /// Basis of the right kernel {x : Ax = 0}, one vector per free column,
    /// in ascending free-column order. Each vector has the free variable set
    /// to 1 and pivot variables back-substituted exactly.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let ech = echelon(self.to_dense());
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            // rows are in echelon order; solve bottom-up
            for &(r, c) in ech.pivots.iter().rev() {
                let mut s = Rat::zero();
                for j in (c + 1)..self.cols {
                    if !ech.rows[r][j].is_zero() && !x[j].is_zero() {
                        s += &ech.rows[r][j] * &x[j];
                    }
                }
                x[c] = -s / &ech.rows[r][c];
            }
            basis.push(x);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Solves Ax = b exactly; free variables are set to 0, so the solution
    /// returned is the canonical one for the echelon pivot choice.
    pub fn solve(&self, b: &[Rat]) -> Result<SolveOutcome, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, b.len(), 1));
        }
        let mut aug = self.to_dense();
        for (r, row) in aug.iter_mut().enumerate() {
            row.push(b[r].clone());
        }
        let ech = echelon(aug);
        // a pivot in the appended column means b is outside the column space
        if ech.pivots.iter().any(|&(_, c)| c == self.cols) {
            return Ok(SolveOutcome::NoSolution);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for &(r, c) in ech.pivots.iter().rev() {
            let mut s = ech.rows[r][self.cols].clone();
            for j in (c + 1)..self.cols {
                if !ech.rows[r][j].is_zero() && !x[j].is_zero() {
                    s -= &ech.rows[r][j] * &x[j];
                }
            }
            x[c] = s / &ech.rows[r][c];
        }
        Ok(SolveOutcome::Solution(x))
    }
}

/// Kronecker product A⊗B with big-endian index flattening:
/// (A⊗B)[(rA·rowsB + rB), (cA·colsB + cB)] = A[rA,cA]·B[rB,cB].
pub fn kron(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let mut out = RationalMatrix::zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (ra, ca, va) in a.iter() {
        for (rb, cb, vb) in b.iter() {
            out.set(ra * b.rows() + rb, ca * b.cols() + cb, va * vb);
        }
    }
    out
}

struct Echelon {
    rows: Vec<Vec<Rat>>,
    /// (row, col) of each pivot, in elimination order.
    pivots: Vec<(usize, usize)>,
}

/// Row echelon form by Bareiss fraction-free elimination. Rows are first
/// cleared to integers (multiplying by the LCM of denominators changes
/// neither rank, kernel, nor solvability), and the two-row update
/// a_ij ← (p·a_ij − a_ik·a_kj) / prev keeps every intermediate an integer,
/// avoiding the coefficient blow-up of plain Gaussian elimination.
fn echelon(rows_in: Vec<Vec<Rat>>) -> Echelon {
    let nrows = rows_in.len();
    let ncols = rows_in.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigInt>> = rows_in
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut pr = 0usize; // next pivot row
    for pc in 0..ncols {
        // first row at or below pr with a nonzero in column pc
        let Some(found) = (pr..nrows).find(|&r| !m[r][pc].is_zero()) else {
            continue;
        };
        m.swap(pr, found);
        let pivot = m[pr][pc].clone();
        for r in (pr + 1)..nrows {
            if m[r][pc].is_zero() && pivot.is_one() && prev.is_one() {
                // fast path: nothing to eliminate, no rescale needed
                continue;
            }
            for c in (pc + 1)..ncols {
                let num = &pivot * &m[r][c] - &m[r][pc] * &m[pr][c];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[r][c] = q;
            }
            m[r][pc] = BigInt::zero();
        }
        pivots.push((pr, pc));
        prev = pivot;
        pr += 1;
        if pr == nrows {
            break;
        }
    }
    let rows = m
        .into_iter()
        .map(|row| row.into_iter().map(Rat::from_integer).collect())
        .collect();
    Echelon { rows, pivots }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .iter()
            .map(|(r, c, v)| (r, c, format_rat(v)))
            .collect();
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let mut m = RationalMatrix::zero(raw.rows, raw.cols);
        for (r, c, s) in raw.entries {
            if r >= raw.rows || c >= raw.cols {
                return Err(D::Error::custom(LinalgError::IndexOutOfRange(
                    r, c, raw.rows, raw.cols,
                )));
            }
            let v = parse_rat(&s).map_err(D::Error::custom)?;
            m.add_to(r, c, v);
        }
        Ok(m)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential shapes do not chain: d_{0} is {1}x{2} but d_{3} is {4}x{5}")]
    ShapeChain(usize, usize, usize, usize, usize, usize),
    #[error("d∘d ≠ 0 at position {0}: composite entry ({1}, {2}) = {3}")]
    NotAComplex(usize, usize, usize, String),
}

/// A finite cochain complex C^0 → C^1 → …, given by its differentials.
/// `differentials[k]` maps C^k to C^{k+1}, stored as a (dim C^{k+1}) x
/// (dim C^k) matrix acting on coordinate columns.
#[derive(Debug, Clone)]
pub struct ChainComplexRep {
    differentials: Vec<RationalMatrix>,
}

impl ChainComplexRep {
    /// Validates the chain conditions d_{k+1}∘d_k = 0 and the shape chain;
    /// reports the first failure with its witness entry.
    pub fn new(differentials: Vec<RationalMatrix>) -> Result<Self, ComplexError> {
        for k in 0..differentials.len().saturating_sub(1) {
            let d0 = &differentials[k];
            let d1 = &differentials[k + 1];
            if d1.cols() != d0.rows() {
                return Err(ComplexError::ShapeChain(
                    k,
                    d0.rows(),
                    d0.cols(),
                    k + 1,
                    d1.rows(),
                    d1.cols(),
                ));
            }
            let comp = d1.matmul(d0).expect("shapes checked above");
            let first = comp.iter().next().map(|(r, c, v)| (r, c, format_rat(v)));
            if let Some((r, c, v)) = first {
                return Err(ComplexError::NotAComplex(k, r, c, v));
            }
        }
        Ok(ChainComplexRep { differentials })
    }

    pub fn differentials(&self) -> &[RationalMatrix] {
        &self.differentials
    }

    /// Dimension of the k-th cochain space, read off the differential shapes.
    pub fn space_dim(&self, k: usize) -> usize {
        if k < self.differentials.len() {
            self.differentials[k].cols()
        } else if k == self.differentials.len() && k > 0 {
            self.differentials[k - 1].rows()
        } else {
            0
        }
    }

    /// dim H^k = dim ker d_k − rank d_{k−1} for every k the data covers.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let n = self.differentials.len();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let ker = if k < n {
                self.differentials[k].nullity()
            } else {
                self.space_dim(k)
            };
            let im = if k > 0 {
                self.differentials[k - 1].rank()
            } else {
                0
            };
            out.push(ker - im);
        }
        out
    }
}
