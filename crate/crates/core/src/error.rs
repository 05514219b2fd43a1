use thiserror::Error;

/// Failures raised by the toolkit. Verdicts such as "condition (A4) fails" are
/// reported through reports, not through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the target space")]
    NotContained,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("matrix does not lie in the algebra")]
    NotInAlgebra,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("element is not homogeneous of the required degree: {0}")]
    NotHomogeneous(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
