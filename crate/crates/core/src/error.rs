use thiserror::Error;

/// Failures raised by the numerical pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The dimensionless integral diverges logarithmically at the origin when
    /// the filter bandwidth vanishes.
    #[error("integral diverges at the origin for gamma*tau = {gamma_tau}")]
    DivergentIntegral { gamma_tau: f64 },

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {value:e} +/- {abs_error:e})")]
    QuadratureNotConverged {
        value: f64,
        abs_error: f64,
        subdivisions: usize,
    },

    /// A background with zero strain power never washes out the fringes.
    #[error("no decoherence: Omega_GW = 0, the critical radius is infinite")]
    NoDecoherence,

    #[error("no sign change of dphi(R) - pi over R in [{lo:e}, {hi:e}] m")]
    BracketNotFound { lo: f64, hi: f64 },

    #[error("root finder did not converge within {iterations} iterations")]
    RootNotConverged { iterations: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::InvalidParameter { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(name, value, "must be finite and > 0"))
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(name, value, "must be finite and >= 0"))
    }
}
