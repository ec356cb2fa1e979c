//! Dense matrices over a field scalar, with elimination-based inverse,
//! kernel and solve. The kernel routine normalizes its answer so that two
//! equal subspaces always produce byte-equal bases.
//!
//! Zero-dimensional shapes (`0 x m`, `m x 0`) are first-class citizens:
//! products, kernels and inverses all follow the usual conventions for empty
//! index sets, e.g. `(2x0) * (0x3) = 0_{2x3}` and `identity(0)` is
//! invertible.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::de;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    /// Row-major, `rows * cols` entries.
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, entries }
    }

    /// Builds from row vectors; all rows must have equal length. An empty
    /// list gives the `0x0` matrix.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
        }
        Ok(Matrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn idx(&self, r: usize, c: usize) -> usize {
        debug_assert!(r < self.rows && c < self.cols);
        r * self.cols + c
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        let i = self.idx(r, c);
        self.entries[i] = value;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + rhs[(r, c)].clone()
        }))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                rhs.rows, rhs.cols, self.rows, self.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() - rhs[(r, c)].clone()
        }))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| s.clone() * self[(r, c)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot place {}x{} beside {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols { self[(r, c)].clone() } else { rhs[(r, c - self.cols)].clone() }
        }))
    }

    /// `[self; rhs]`.
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot place {}x{} above {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows { self[(r, c)].clone() } else { rhs[(r - self.rows, c)].clone() }
        }))
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b[(r, c)].clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product, blocks of `rhs` scaled by entries of `self`.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            let (i, k) = (r / rhs.rows, r % rhs.rows);
            let (j, l) = (c / rhs.cols, c % rhs.cols);
            self[(i, j)].clone() * rhs[(k, l)].clone()
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn columns_range(&self, range: std::ops::Range<usize>) -> Self {
        Self::from_fn(self.rows, range.len(), |r, c| self[(r, range.start + c)].clone())
    }

    /// Reduced row echelon form together with the pivot columns. Pivot
    /// selection takes the first nonzero entry in each column, so the result
    /// is deterministic; RREF itself is unique for a given row space.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(prow, r);
            let p = m[(prow, col)].clone();
            if !p.is_one() {
                for c in col..m.cols {
                    let v = m[(prow, c)].clone() / p.clone();
                    m.set(prow, c, v);
                }
            }
            for r2 in 0..m.rows {
                if r2 == prow {
                    continue;
                }
                let f = m[(r2, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m[(r2, c)].clone() - f.clone() * m[(prow, c)].clone();
                    m.set(r2, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        let mut negate = false;
        for col in 0..n {
            let Some(r) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(S::zero());
            };
            if r != col {
                m.swap_rows(col, r);
                negate = !negate;
            }
            let p = m[(col, col)].clone();
            det = det * p.clone();
            for r2 in col + 1..n {
                let f = m[(r2, col)].clone() / p.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m[(r2, c)].clone() - f.clone() * m[(col, c)].clone();
                    m.set(r2, c, v);
                }
            }
        }
        Ok(if negate { -det } else { det })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n))?;
        let (r, pivots) = aug.rref();
        if pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(r.columns_range(n..2 * n))
    }

    /// Basis of `{x : self * x = 0}`, returned as the columns of an
    /// `cols x nullity` matrix. The basis is canonical: its transpose is in
    /// reduced row echelon form, so equal kernels compare equal.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut w = Self::zeros(free.len(), self.cols);
        for (j, &f) in free.iter().enumerate() {
            w.set(j, f, S::one());
            for (t, &p) in pivots.iter().enumerate() {
                let val = r[(t, f)].clone();
                if !val.is_zero() {
                    w.set(j, p, -val);
                }
            }
        }
        let (canon, _) = w.rref();
        canon.transpose()
    }
}

/// Solves `basis * x = target` where the columns of `basis` are linearly
/// independent. Errors with [`Error::NotInSpan`] (1-based target column)
/// when some column of `target` is not a combination of the basis columns.
pub fn solve_in_basis<S: Scalar>(basis: &Matrix<S>, target: &Matrix<S>) -> Result<Matrix<S>> {
    if basis.rows != target.rows {
        return Err(Error::DimensionMismatch(format!(
            "basis is {}x{}, target is {}x{}",
            basis.rows, basis.cols, target.rows, target.cols
        )));
    }
    let k = basis.cols;
    let aug = basis.hstack(target)?;
    let (r, pivots) = aug.rref();
    if let Some(&p) = pivots.iter().find(|&&p| p >= k) {
        return Err(Error::NotInSpan { col: p - k + 1 });
    }
    let mut x = Matrix::zeros(k, target.cols);
    for (t, &p) in pivots.iter().enumerate() {
        for c in 0..target.cols {
            x.set(p, c, r[(t, k + c)].clone());
        }
    }
    Ok(x)
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }
}

impl<S: fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", &self.entries[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<S: Serialize> Serialize for Matrix<S> {
    fn serialize<T: Serializer>(&self, serializer: T) -> std::result::Result<T::Ok, T::Error> {
        let mut st = serializer.serialize_struct("Matrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let rows: Vec<&[S]> = if self.cols == 0 {
            vec![&[] as &[S]; self.rows]
        } else {
            self.entries.chunks(self.cols).collect()
        };
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr<S> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<S>>,
}

impl<'de, S: Deserialize<'de>> Deserialize<'de> for Matrix<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::<S>::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows {
            return Err(de::Error::custom(format!(
                "matrix declares {} rows but has {} entry rows",
                repr.rows,
                repr.entries.len()
            )));
        }
        for (i, row) in repr.entries.iter().enumerate() {
            if row.len() != repr.cols {
                return Err(de::Error::custom(format!(
                    "matrix row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    repr.cols
                )));
            }
        }
        Ok(Matrix {
            rows: repr.rows,
            cols: repr.cols,
            entries: repr.entries.into_iter().flatten().collect(),
        })
    }
}
