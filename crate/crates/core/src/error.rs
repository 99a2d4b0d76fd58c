use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid {field}: {reason}")]
    InvalidSpec { field: &'static str, reason: String },

    #[error("pre-deflection {pre_deflection} m is smaller than tooth height {tooth_height} m")]
    InvalidPairing { pre_deflection: f64, tooth_height: f64 },

    #[error("nothing to simulate: cutoff {cutoff} V is not below initial voltage {v0} V")]
    EmptyRun { v0: f64, cutoff: f64 },

    #[error("infeasible calibration: {0}")]
    Infeasible(String),

    #[error("time step {dt} s exceeds limit {limit} s")]
    StepSize { dt: f64, limit: f64 },

    #[error("objective is not finite at {at}")]
    NonFinite { at: f64 },

    #[error("empty trace")]
    EmptyTrace,

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("{path}: {message}")]
    Config { path: String, message: String },
}

impl Error {
    pub(crate) fn spec(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidSpec { field, reason: reason.into() }
    }
}

/// Fails with [`Error::InvalidSpec`] unless `value > 0` and finite.
pub(crate) fn ensure_positive<T: crate::Real>(field: &'static str, value: T) -> Result<()> {
    if value.is_finite() && value > T::zero() {
        Ok(())
    } else {
        Err(Error::spec(field, format!("must be positive, got {value}")))
    }
}
