//! Exact rational and integer linear algebra.
//!
//! All matrices are dense and row-major over `BigRational`.  The integer
//! routines (Hermite normal form, saturated kernels, unimodularity) are what
//! the rest of the crate leans on for Gale duality, so they are written for
//! correctness and determinism rather than speed; desk-scale inputs have at
//! most a few thousand entries.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactLinError {
    /// Row rank is smaller than the row count.
    NotFullRank,
    /// An operation requiring integer entries saw a proper fraction.
    NonInteger,
    /// Incompatible dimensions.
    Shape(String),
}

impl fmt::Display for ExactLinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactLinError::NotFullRank => write!(f, "matrix does not have full row rank"),
            ExactLinError::NonInteger => write!(f, "matrix has non-integer entries"),
            ExactLinError::Shape(s) => write!(f, "shape mismatch: {s}"),
        }
    }
}

/// Dense exact rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count must be rows*cols");
        RatMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| crate::rat_int(x)));
        }
        RatMatrix::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    /// Apply the matrix to a vector.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * &v[c];
                }
                acc
            })
            .collect()
    }

    /// Submatrix with the given column indices, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zero(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                *out.at_mut(r, j) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce_in_place().1.len()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        self.clone().row_reduce_in_place()
    }

    fn row_reduce_in_place(mut self) -> (RatMatrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(sel) = (pr..self.rows).find(|&r| !self.at(r, pc).is_zero()) else {
                continue;
            };
            if sel != pr {
                for c in 0..self.cols {
                    self.entries.swap(sel * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = self.at(pr, pc).recip();
            for c in pc..self.cols {
                let v = self.at(pr, c) * &inv;
                *self.at_mut(pr, c) = v;
            }
            for r in 0..self.rows {
                if r != pr && !self.at(r, pc).is_zero() {
                    let f = self.at(r, pc).clone();
                    for c in pc..self.cols {
                        let v = self.at(r, c) - &f * self.at(pr, c);
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        (self, pivots)
    }

    /// Basis of the right kernel, one vector per row.  Row count is
    /// `cols - rank`.
    pub fn kernel_basis(&self) -> RatMatrix {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = RatMatrix::zero(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            *out.at_mut(k, fc) = Rat::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                *out.at_mut(k, pc) = -red.at(prow, fc).clone();
            }
        }
        out
    }

    /// Solve `self * x = b` if consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = red.at(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Minimum-norm solution of `self * x = b` for a full-row-rank matrix:
    /// `x = Aᵀ (A Aᵀ)⁻¹ b`.  Deterministic, exact.
    pub fn least_norm_solve(&self, b: &[Rat]) -> Result<Vec<Rat>, ExactLinError> {
        let gram = self.mul(&self.transpose());
        let y = gram.solve(b).ok_or(ExactLinError::NotFullRank)?;
        Ok(self.transpose().mul_vec(&y))
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for p in 0..n {
            let Some(sel) = (p..n).find(|&r| !m.at(r, p).is_zero()) else {
                return Rat::zero();
            };
            if sel != p {
                for c in 0..n {
                    m.entries.swap(sel * n + c, p * n + c);
                }
                det = -det;
            }
            det *= m.at(p, p).clone();
            let inv = m.at(p, p).recip();
            for r in p + 1..n {
                if !m.at(r, p).is_zero() {
                    let f = m.at(r, p) * &inv;
                    for c in p..n {
                        let v = m.at(r, c) - &f * m.at(p, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
        }
        det
    }

    /// Do the rows of `self` and `other` span the same subspace of ℚⁿ?
    pub fn same_row_space(&self, other: &RatMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let (a, ap) = self.rref();
        let (b, bp) = other.rref();
        if ap != bp {
            return false;
        }
        (0..ap.len()).all(|r| a.row(r) == b.row(r))
    }

    fn to_bigint_rows(&self) -> Result<Vec<Vec<BigInt>>, ExactLinError> {
        if !self.is_integer() {
            return Err(ExactLinError::NonInteger);
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.to_integer()).collect())
            .collect())
    }

    fn from_bigint_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> RatMatrix {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            entries.extend(row.into_iter().map(Rat::from_integer));
        }
        RatMatrix::new(r, cols, entries)
    }

    /// Integer matrix whose rows generate the saturated lattice
    /// `ker(self) ∩ ℤⁿ`, canonicalized by Hermite normal form so re-runs are
    /// bit-identical.  Requires integer entries and full row rank.
    pub fn gale_complement(&self) -> Result<RatMatrix, ExactLinError> {
        let ints = self.to_bigint_rows()?;
        if self.rank() != self.rows {
            return Err(ExactLinError::NotFullRank);
        }
        // U · selfᵀ = [H; 0] with U unimodular; the bottom rows of U are a
        // basis of the saturated integer kernel.
        let transposed: Vec<Vec<BigInt>> = (0..self.cols)
            .map(|c| ints.iter().map(|row| row[c].clone()).collect())
            .collect();
        let (h, u) = hermite_with_transform(transposed);
        let rank = h.iter().filter(|row| row.iter().any(|x| !x.is_zero())).count();
        debug_assert_eq!(rank, self.rows);
        let kernel_rows: Vec<Vec<BigInt>> = u[rank..].to_vec();
        let canon = hermite_rows(kernel_rows);
        Ok(RatMatrix::from_bigint_rows(canon, self.cols))
    }

    /// True iff every maximal minor of this integer full-row-rank matrix lies
    /// in {0, ±1}.
    pub fn is_unimodular(&self) -> Result<bool, ExactLinError> {
        let ints = self.to_bigint_rows()?;
        let d = self.rows;
        if self.rank() != d {
            return Err(ExactLinError::NotFullRank);
        }
        let one = BigInt::one();
        for cols in Subsets::new(self.cols, d) {
            let minor = bigint_det(&ints, &cols);
            if !minor.is_zero() && minor.abs() != one {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Determinant of the square submatrix on the given columns, by fraction-free
/// (Bareiss) elimination.
fn bigint_det(rows: &[Vec<BigInt>], cols: &[usize]) -> BigInt {
    let n = cols.len();
    assert_eq!(rows.len(), n);
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for p in 0..n {
        let Some(sel) = (p..n).find(|&r| !m[r][p].is_zero()) else {
            return BigInt::zero();
        };
        if sel != p {
            m.swap(sel, p);
            sign = -sign;
        }
        for r in p + 1..n {
            for c in p + 1..n {
                let num = &m[p][p] * &m[r][c] - &m[r][p] * &m[p][c];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                m[r][c] = q;
            }
            m[r][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Row-style Hermite normal form with transform: returns `(H, U)` with
/// `U · M = H`, `U` unimodular, `H` in row echelon form with positive pivots
/// and entries above each pivot reduced into `[0, pivot)`.
fn hermite_with_transform(m: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut h = m;
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let mut row = vec![BigInt::zero(); rows];
            row[i] = BigInt::one();
            row
        })
        .collect();
    let mut pr = 0usize;
    for pc in 0..cols {
        // Clear the column below pr with gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for r in pr..rows {
                if !h[r][pc].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) => {
                            if h[r][pc].abs() < h[b][pc].abs() {
                                Some(r)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap(pr, b);
            u.swap(pr, b);
            let mut done = true;
            for r in pr + 1..rows {
                if !h[r][pc].is_zero() {
                    let q = div_floor_bigint(&h[r][pc], &h[pr][pc]);
                    row_sub_mul(&mut h, r, pr, &q);
                    row_sub_mul(&mut u, r, pr, &q);
                    if !h[r][pc].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if pr < rows && !h[pr][pc].is_zero() {
            if h[pr][pc].is_negative() {
                for x in h[pr].iter_mut() {
                    *x = -core::mem::take(x);
                }
                for x in u[pr].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            // Reduce entries above the pivot.
            for r in 0..pr {
                if !h[r][pc].is_zero() {
                    let q = div_floor_bigint(&h[r][pc], &h[pr][pc]);
                    row_sub_mul(&mut h, r, pr, &q);
                    row_sub_mul(&mut u, r, pr, &q);
                }
            }
            pr += 1;
        }
        if pr == rows {
            break;
        }
    }
    (h, u)
}

/// Canonical Hermite normal form of the row span, zero rows dropped.
fn hermite_rows(m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let (h, _) = hermite_with_transform(m);
    h.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())).collect()
}

fn div_floor_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn row_sub_mul(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m[dst].len() {
        let v = &m[dst][c] - q * &m[src][c];
        m[dst][c] = v;
    }
}

/// Iterator over all `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub struct Subsets {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        let state = if k <= n { Some((0..k).collect()) } else { None };
        Subsets { n, k, state }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.state.clone()?;
        // Advance to the lexicographic successor.
        let mut next = cur.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.state = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - (self.k - i) {
                next[i] += 1;
                for j in i + 1..self.k {
                    next[j] = next[j - 1] + 1;
                }
                self.state = Some(next);
                break;
            }
        }
        Some(cur)
    }
}
