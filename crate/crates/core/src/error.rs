use thiserror::Error;

/// Errors raised by the exact toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial degree {degree} exceeds the supported maximum {max}")]
    DegreeTooHigh { degree: u32, max: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("k = {k} is outside 1..={max}")]
    BadK { k: u64, max: u64 },
    #[error("lift degree must be at least 4, got {0}")]
    BadDegree(u32),
    #[error("cut of size {size} is smaller than k = {k}")]
    CutTooSmall { size: u64, k: u64 },
    #[error("instance with n = {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("indicator entries must be +1 or -1 and match the vertex count")]
    BadIndicator,
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
