use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    /// `det` is the exact zero-determinant witness when the matrix was rational.
    #[error("singular {n}x{n} matrix{}", det.as_ref().map(|d| format!(" (det = {d})")).unwrap_or_default())]
    SingularMatrix { n: usize, det: Option<String> },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("generators do not commute; eigenvalue-side evaluation is undefined")]
    CommutationRequired,

    #[error("unsupported in symbolic mode: {0}")]
    UnsupportedSymbolic(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension {n} exceeds the permutation-sum cap of {cap}")]
    LeibnizCap { n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
