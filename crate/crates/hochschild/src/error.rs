use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HhError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("not a cocycle in degree {0}")]
    NotCocycle(usize),
    #[error("truncation too small: need degree {need}, have {have}")]
    Truncation { need: usize, have: usize },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, HhError>;
