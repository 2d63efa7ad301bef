use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("boundary set must be nonempty")]
    EmptyBoundary,

    #[error("boundary vertex {0} out of range")]
    BoundaryOutOfRange(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("interior block of the Laplacian is singular")]
    SingularInterior,

    #[error("symmetric eigensolver did not converge on a matrix of order {0}")]
    NoConvergence(usize),

    #[error("eigenpair residual {residual:e} exceeds the limit {limit:e}")]
    ResidualTooLarge { residual: f64, limit: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error(
        "class margin violated: found a tree with b={b}, m={m} on n={n} vertices \
         (the enumeration bound assumes none exist at n = 2m+b)"
    )]
    MarginViolation { b: usize, m: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
