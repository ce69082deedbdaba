use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cost guard: {0}")]
    CostGuard(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
