use thiserror::Error;

/// Errors raised by model construction and the decision procedures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point {0} is not in the group generated by the semigroup")]
    NotInGroup(String),
    #[error("window radius {radius} is smaller than the largest generator coordinate {required}")]
    WindowTooSmall { radius: i64, required: i64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("format error: {0}")]
    Format(String),
    #[error("unknown facet {0}")]
    UnknownFacet(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
