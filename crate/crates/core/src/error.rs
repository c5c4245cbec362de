use thiserror::Error;

/// Errors raised by the arithmetic kernel, the evaluators, the harness and the certifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: alpha {left} vs alpha {right}")]
    DimensionMismatch { left: f64, right: f64 },
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("non-finite result: {0}")]
    NonFinite(String),
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
