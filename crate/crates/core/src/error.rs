use thiserror::Error;

/// Errors raised by the engines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero rank: a slope needs a nonzero denominator")]
    ZeroRank,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate truncation: nested evaluation divides by zero")]
    DegenerateTruncation,
    #[error("case not specified: {0}")]
    Unspecified(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("non-generic tau: {0}; resample")]
    NonGeneric(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
