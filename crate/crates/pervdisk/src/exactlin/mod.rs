//! Exact linear algebra: the rational scalar and dense matrices over any
//! field-like scalar, plus the elimination routines everything else is
//! built on.

mod matrix;
mod rat;
mod scalar;

pub use matrix::{solve_in_basis, Matrix};
pub use rat::Rat;
pub use scalar::Scalar;

impl Matrix<Rat> {
    /// Convenience builder for integer matrices. Panics on ragged input;
    /// meant for tests and small literals.
    pub fn from_int_rows(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&n| Rat::from(n)).collect()).collect())
            .expect("ragged rows in integer matrix literal")
    }
}
