use thiserror::Error;

/// Errors shared by every module in the crate. Validation problems that are
/// *data* (a candidate object failing its invariants) are reported as
/// violation lists by the `validate` functions instead; `Error` is for
/// operations that cannot produce a result at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("column {col} of the target lies outside the span of the basis")]
    NotInSpan { col: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
