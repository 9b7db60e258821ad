use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("length mismatch: expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("unsupported order {order} (maximum {max})")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("q = {q} is outside the support of the state (marginal {marginal:e})")]
    OutOfSupport { q: f64, marginal: f64 },

    #[error("P-distribution of the vacuum is a point mass; the P-integral needs mean_n > 0")]
    DeltaDistribution,

    #[error("postselection probability {probability:e} is too small to condition on")]
    InsufficientStatistics { probability: f64 },

    #[error("pointer has non-vanishing current density (max |j| = {current:e})")]
    InvalidPointer { current: f64 },

    #[error("grid too narrow: {0}")]
    GridTooNarrow(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument { .. } => "invalid-argument",
            Error::InvalidGrid(_) => "invalid-grid",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::UnsupportedOrder { .. } => "unsupported-order",
            Error::OutOfSupport { .. } => "out-of-support",
            Error::DeltaDistribution => "delta-distribution",
            Error::InsufficientStatistics { .. } => "insufficient-statistics",
            Error::InvalidPointer { .. } => "invalid-pointer",
            Error::GridTooNarrow(_) => "grid-too-narrow",
            Error::VerificationFailed(_) => "verification-failed",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
