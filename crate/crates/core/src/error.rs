use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("axiom check failed: {0}")]
    Axiom(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("no solution in degree {degree}: {detail}")]
    NoSolution { degree: usize, detail: String },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
