//! Spectral building blocks: strain noise of the scale-invariant background,
//! the two-path response to a single strain frequency, the high-pass filter,
//! and the dimensionless integrand obtained after substituting x = omega*tau.

use crate::error::{require_non_negative, Error, Result};
use crate::model::{FilterShape, GWBackground, PhysicalConstants};

/// High-pass filter with bandwidth `gamma` (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Filter {
    pub shape: FilterShape,
    pub gamma: f64,
}

impl Filter {
    pub fn new(shape: FilterShape, gamma: f64) -> Result<Self> {
        require_non_negative("gamma", gamma)?;
        Ok(Filter { shape, gamma })
    }

    /// Weight in [0, 1] applied to noise at angular frequency `omega`.
    pub fn weight(&self, omega: f64) -> f64 {
        match self.shape {
            FilterShape::Lorentzian => {
                if self.gamma == 0.0 {
                    return 1.0;
                }
                let w2 = omega * omega;
                w2 / (w2 + self.gamma * self.gamma)
            }
            FilterShape::SharpCutoff => {
                if omega < self.gamma {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }
}

pub fn filter(omega: f64, f: &Filter) -> f64 {
    f.weight(omega)
}

fn require_frequency(omega: f64) -> Result<()> {
    if omega > 0.0 && !omega.is_nan() {
        Ok(())
    } else {
        Err(Error::invalid("omega", omega, "must be > 0"))
    }
}

/// One-sided strain spectral density 3 H0^2 Omega_GW / omega^3, zero above
/// the band cut-off.
pub fn strain_psd(omega: f64, bg: &GWBackground, consts: &PhysicalConstants) -> Result<f64> {
    require_frequency(omega)?;
    if omega > bg.omega_c {
        return Ok(0.0);
    }
    Ok(3.0 * consts.hubble_rate.powi(2) * bg.omega_gw / omega.powi(3))
}

/// Squared phase response to unit strain at `omega`:
/// (4 m v^2 / (hbar omega))^2 sin^2(2 alpha) sin^4(omega tau / 2).
pub fn response_a(
    omega: f64,
    mass: f64,
    velocity: f64,
    tau: f64,
    alpha: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    require_frequency(omega)?;
    let amp = 4.0 * mass * velocity * velocity / (consts.hbar * omega);
    let s = (omega * tau / 2.0).sin();
    Ok(amp * amp * (2.0 * alpha).sin().powi(2) * s.powi(4))
}

/// Below this x the sin^4(x/2) numerator is replaced by its Taylor form.
const SERIES_CUTOFF: f64 = 1e-4;

/// sin^4(x/2), accurate as x -> 0.
pub(crate) fn sin4_half(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let t = 1.0 - x * x / 24.0;
        // sin(x/2) ~ (x/2)(1 - x^2/24)
        (x * x / 4.0 * t * t).powi(2)
    } else {
        (x / 2.0).sin().powi(4)
    }
}

/// Integrand of the dimensionless phase-variance integral in x = omega*tau.
///
/// Lorentzian: sin^4(x/2) / (x^3 (x^2 + (gamma tau)^2)).
/// Sharp cut-off: sin^4(x/2) / x^5 for x >= gamma tau, else 0.
pub fn integrand(x: f64, gamma_tau: f64, shape: FilterShape) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::invalid("x", x, "must be > 0"));
    }
    Ok(integrand_unchecked(x, gamma_tau, shape))
}

#[inline]
pub(crate) fn integrand_unchecked(x: f64, gamma_tau: f64, shape: FilterShape) -> f64 {
    match shape {
        FilterShape::Lorentzian => {
            if x < SERIES_CUTOFF {
                // sin^4(x/2)/x^4 -> (1 - x^2/24)^4 / 16
                let t = 1.0 - x * x / 24.0;
                let ratio = (t * t).powi(2) / 16.0;
                x * ratio / (x * x + gamma_tau * gamma_tau)
            } else {
                sin4_half(x) / (x.powi(3) * (x * x + gamma_tau * gamma_tau))
            }
        }
        FilterShape::SharpCutoff => {
            if x < gamma_tau {
                0.0
            } else {
                sin4_half(x) / x.powi(5)
            }
        }
    }
}
