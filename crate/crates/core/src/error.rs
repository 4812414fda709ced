//! Error type shared by every numerical routine.

use thiserror::Error;

/// Failures raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MtiError {
    #[error("matrix is not positive definite (pivot {pivot:e} at step {step})")]
    NotPositiveDefinite { step: usize, pivot: f64 },
    #[error("inner linear system is singular")]
    SingularSystem,
    #[error("degenerate direction: {0}")]
    DegenerateDirection(&'static str),
    #[error("snapshot has zero energy")]
    ZeroSnapshot,
    #[error("steering vector has zero norm")]
    ZeroSteering,
    #[error("constraint direction collapsed (|s^H w| underflow)")]
    ConstraintDirectionCollapse,
    #[error("model order {order} too high for {available} samples")]
    OrderTooHigh { order: usize, available: usize },
    #[error("power must be positive: {0}")]
    ZeroPower(&'static str),
    #[error("loading must be non-negative, got {0}")]
    NegativeLoading(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, MtiError>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(MtiError::DimensionMismatch { expected, found })
    }
}
