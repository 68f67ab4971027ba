use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A closed-form denominator vanished (resonance pole).
    #[error("singular point: |{what}| = {magnitude:e} relative to scale {scale:e}")]
    Singular {
        what: &'static str,
        magnitude: f64,
        scale: f64,
    },

    /// g2 is a ratio over the mean photon number; it does not exist when that vanishes.
    #[error("correlation undefined: mean photon number {mean_photon:e} too small")]
    UndefinedCorrelation { mean_photon: f64 },

    #[error("amplitudes not stationary after integration: relative rate {residual:e}")]
    NotConverged { residual: f64 },

    #[error("Liouvillian kernel is not one-dimensional: singular value ratio {ratio:e}")]
    MultipleSteadyStates { ratio: f64 },

    #[error("ill-conditioned steady-state solve: residual {residual:e} exceeds {tolerance:e}")]
    IllConditioned { residual: f64, tolerance: f64 },

    #[error("state is not physical: {0}")]
    NonPhysical(String),

    #[error("Fock truncation not converged at cutoff {cutoff}: relative change {relative_change:e}")]
    TruncationNotConverged { cutoff: usize, relative_change: f64 },

    #[error("propagation failed: {0}")]
    Propagation(String),

    #[error("linear algebra failure: {0}")]
    Linalg(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
