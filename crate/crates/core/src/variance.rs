//! Phase variance of the interferometer: exact quadrature of the
//! dimensionless integral, the closed-form approximation, and the fringe
//! visibility that follows from the variance.
//!
//! The exact integral runs up to `omega_c * tau`, which reaches 1e10 for
//! realistic cut-offs. Only the first few tens of half-periods are integrated
//! numerically. Beyond that the numerator is split as
//! `sin^4(x/2) = 3/8 - cos(x)/2 + cos(2x)/8`; the constant term has a closed
//! antiderivative and the two cosine terms are summed with their asymptotic
//! integration-by-parts series.

use std::f64::consts::PI;

use crate::error::{require_non_negative, Error, Result};
use crate::model::{
    FilterShape, GWBackground, InterferometerConfig, PhysicalConstants, SphereSpec,
    VarianceMethodTag, VarianceResult,
};
use crate::quadrature::integrate_panels;
use crate::spectral::integrand_unchecked;

/// Where the explicit quadrature stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailPolicy {
    /// Integrate numerically all the way to `omega_c * tau`. Only usable when
    /// that range holds fewer half-periods than `max_subdivisions`.
    ExplicitToCutoff,
    /// Integrate numerically to a few tens of half-periods and add the
    /// analytic tail.
    AsymptoticTail,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub tail_policy: TailPolicy,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: 1e-8,
            abs_tol: 1e-300,
            max_subdivisions: 20_000,
            tail_policy: TailPolicy::AsymptoticTail,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", self.rel_tol, "must be > 0"));
        }
        require_non_negative("abs_tol", self.abs_tol)?;
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("max_subdivisions", 0.0, "must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub abs_error: f64,
}

/// Smallest point at which the asymptotic tail takes over.
const MIN_TAIL_START: f64 = 20.0 * PI;
/// The tail start follows 10*gamma*tau up to this point. Past it the
/// asymptotic series is already accurate to ~1e-14 relative for any gamma*tau.
const MAX_TAIL_START: f64 = 200.0 * PI;

/// Denominator polynomial p(x) = x^5 + s^2 x^3 of the tail weight
/// w(x) = 1/p(x), with its derivatives.
struct TailWeight {
    s2: f64,
}

impl TailWeight {
    fn new(shape: FilterShape, gamma_tau: f64) -> Self {
        let s2 = match shape {
            FilterShape::Lorentzian => gamma_tau * gamma_tau,
            FilterShape::SharpCutoff => 0.0,
        };
        TailWeight { s2 }
    }

    /// w, w', w'', w''', w'''' at x, from the Leibniz rule applied to p w = 1.
    fn derivatives(&self, x: f64) -> [f64; 5] {
        let s2 = self.s2;
        let x2 = x * x;
        let p = [
            x2 * x2 * x + s2 * x2 * x,
            5.0 * x2 * x2 + 3.0 * s2 * x2,
            20.0 * x2 * x + 6.0 * s2 * x,
            60.0 * x2 + 6.0 * s2,
            120.0 * x,
        ];
        const BINOM: [[f64; 5]; 5] = [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 2.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 3.0, 1.0, 0.0],
            [1.0, 4.0, 6.0, 4.0, 1.0],
        ];
        let mut w = [0.0; 5];
        w[0] = 1.0 / p[0];
        for n in 1..5 {
            let mut acc = 0.0;
            for j in 1..=n {
                acc += BINOM[n][j] * p[j] * w[n - j];
            }
            w[n] = -acc / p[0];
        }
        w
    }

    /// Integral of w from `a` to infinity.
    fn tail(&self, a: f64) -> f64 {
        let a2 = a * a;
        let u = self.s2 / a2;
        if u < 0.5 {
            // (u - ln(1+u)) / (2 s^4) expanded so that s -> 0 is exact.
            let mut sum = 0.0;
            let mut term = 1.0;
            for k in 2..80 {
                let add = term / k as f64;
                sum += if k % 2 == 0 { add } else { -add };
                term *= u;
                if term < 1e-18 {
                    break;
                }
            }
            sum / (2.0 * a2 * a2)
        } else {
            (u - u.ln_1p()) / (2.0 * self.s2 * self.s2)
        }
    }

    /// Asymptotic value of the integral of cos(k x) w(x) from `a` to infinity
    /// and the size of the first omitted term.
    fn cos_tail(&self, k: f64, a: f64) -> (f64, f64) {
        let w = self.derivatives(a);
        let (s, c) = (k * a).sin_cos();
        let value = -s * w[0] / k - c * w[1] / k.powi(2) + s * w[2] / k.powi(3)
            + c * w[3] / k.powi(4);
        (value, (w[4] / k.powi(5)).abs())
    }

    /// Integral of sin^4(x/2) w(x) over [a, b], b possibly infinite.
    fn oscillatory_tail(&self, a: f64, b: f64) -> IntegralEstimate {
        let (c1a, e1a) = self.cos_tail(1.0, a);
        let (c2a, e2a) = self.cos_tail(2.0, a);
        let mut value = 0.375 * self.tail(a) - 0.5 * c1a + 0.125 * c2a;
        let mut err = 0.5 * e1a + 0.125 * e2a;
        if b.is_finite() {
            let (c1b, e1b) = self.cos_tail(1.0, b);
            let (c2b, e2b) = self.cos_tail(2.0, b);
            value -= 0.375 * self.tail(b) - 0.5 * c1b + 0.125 * c2b;
            err += 0.5 * e1b + 0.125 * e2b;
        }
        IntegralEstimate {
            value,
            abs_error: err + 4.0 * f64::EPSILON * value.abs(),
        }
    }
}

/// Panel edges: the lower limit, every multiple of pi in between, the
/// filter knee, and the upper limit.
fn half_period_breaks(lo: f64, hi: f64, knee: f64) -> Vec<f64> {
    let mut breaks = vec![lo];
    let first = (lo / PI).floor() as u64 + 1;
    let mut k = first;
    loop {
        let x = k as f64 * PI;
        if x >= hi {
            break;
        }
        breaks.push(x);
        k += 1;
    }
    breaks.push(hi);
    if knee > lo && knee < hi {
        breaks.push(knee);
        breaks.sort_by(f64::total_cmp);
    }
    breaks.dedup();
    breaks
}

/// Dimensionless phase-variance integral over x = omega*tau in
/// (0, `cutoff`], where `cutoff = omega_c * tau` and may be infinite.
///
/// Lorentzian: integral of sin^4(x/2) / (x^3 (x^2 + gt^2)).
/// Sharp cut-off: integral of sin^4(x/2) / x^5 over [gt, cutoff].
pub fn dimensionless_integral(
    gamma_tau: f64,
    cutoff: f64,
    shape: FilterShape,
    settings: &QuadratureSettings,
) -> Result<IntegralEstimate> {
    settings.validate()?;
    require_non_negative("gamma_tau", gamma_tau)?;
    if !(cutoff > 0.0) {
        return Err(Error::invalid("omega_c_tau", cutoff, "must be > 0"));
    }
    if gamma_tau == 0.0 {
        return Err(Error::DivergentIntegral { gamma_tau });
    }

    let lower = match shape {
        FilterShape::Lorentzian => 0.0,
        FilterShape::SharpCutoff => gamma_tau,
    };
    if cutoff <= lower {
        return Ok(IntegralEstimate {
            value: 0.0,
            abs_error: 0.0,
        });
    }

    let explicit_end = match settings.tail_policy {
        TailPolicy::ExplicitToCutoff => {
            let half_periods = (cutoff - lower) / PI;
            if !cutoff.is_finite() || half_periods > settings.max_subdivisions as f64 {
                return Err(Error::invalid(
                    "omega_c_tau",
                    cutoff,
                    "too many half-periods for explicit integration",
                ));
            }
            cutoff
        }
        TailPolicy::AsymptoticTail => {
            let start = (10.0 * gamma_tau).clamp(MIN_TAIL_START, MAX_TAIL_START);
            start.max(lower).min(cutoff)
        }
    };

    let f = |x: f64| integrand_unchecked(x, gamma_tau, shape);
    let mut total = IntegralEstimate {
        value: 0.0,
        abs_error: 0.0,
    };
    if explicit_end > lower {
        let breaks = half_period_breaks(lower, explicit_end, gamma_tau);
        // Tolerance split: the tail is accurate far beyond rel_tol, so the
        // panels get most of the budget.
        let est = integrate_panels(
            &f,
            &breaks,
            0.5 * settings.rel_tol,
            settings.abs_tol,
            settings.max_subdivisions,
        )?;
        total.value += est.value;
        total.abs_error += est.abs_error;
    }
    if cutoff > explicit_end {
        let tail = TailWeight::new(shape, gamma_tau).oscillatory_tail(explicit_end, cutoff);
        total.value += tail.value;
        total.abs_error += tail.abs_error;
    }
    Ok(total)
}

/// 1 + 20 (gamma tau)^(1/4) + 10 (gamma tau)^n.
pub fn approx_denominator(gamma_tau: f64, n: i32) -> f64 {
    1.0 + 20.0 * gamma_tau.powf(0.25) + 10.0 * gamma_tau.powi(n)
}

/// Closed-form stand-in for the dimensionless integral,
/// sqrt(3) / (1 + 20 (gamma tau)^(1/4) + 10 (gamma tau)^n). The exponent is
/// 2 for the Lorentzian filter and 4 for the sharp cut-off.
pub fn approx_integral(gamma_tau: f64, n: i32) -> f64 {
    3f64.sqrt() / approx_denominator(gamma_tau, n)
}

/// Exponents for which the approximation was fitted.
pub fn is_fitted_exponent(n: i32) -> bool {
    n == 2 || n == 4
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarianceMethod {
    Exact(QuadratureSettings),
    Approx(i32),
}

/// 24 H0^2 Omega_GW / (pi hbar^2) * m^2 (v tau)^4 * sin^2(2 alpha); the phase
/// variance is this times the dimensionless integral.
pub fn variance_prefactor(
    sphere: &SphereSpec,
    cfg: &InterferometerConfig,
    bg: &GWBackground,
    consts: &PhysicalConstants,
) -> f64 {
    let m = sphere.mass();
    let vt = cfg.velocity * cfg.tau();
    24.0 * consts.hubble_rate.powi(2) * bg.omega_gw / (PI * consts.hbar.powi(2))
        * m
        * m
        * vt.powi(4)
        * (2.0 * cfg.alpha).sin().powi(2)
}

/// Phase variance Delta phi^2 in rad^2.
pub fn phase_variance(
    sphere: &SphereSpec,
    cfg: &InterferometerConfig,
    bg: &GWBackground,
    consts: &PhysicalConstants,
    method: &VarianceMethod,
) -> Result<VarianceResult> {
    sphere.validate()?;
    cfg.validate()?;
    bg.validate()?;
    consts.validate()?;
    let gamma_tau = cfg.gamma_tau(consts)?;
    let prefactor = variance_prefactor(sphere, cfg, bg, consts);

    match method {
        VarianceMethod::Exact(settings) => {
            if bg.omega_gw == 0.0 {
                settings.validate()?;
                return Ok(VarianceResult {
                    delta_phi_sq: 0.0,
                    method: VarianceMethodTag::ExactQuadrature,
                    abs_error_estimate: Some(0.0),
                });
            }
            let cutoff = bg.omega_c * cfg.tau();
            let est = dimensionless_integral(gamma_tau, cutoff, cfg.filter, settings)?;
            Ok(VarianceResult {
                delta_phi_sq: prefactor * est.value,
                method: VarianceMethodTag::ExactQuadrature,
                abs_error_estimate: Some(prefactor * est.abs_error),
            })
        }
        VarianceMethod::Approx(n) => Ok(VarianceResult {
            delta_phi_sq: prefactor * approx_integral(gamma_tau, *n),
            method: VarianceMethodTag::Approximation(*n),
            abs_error_estimate: None,
        }),
    }
}

/// Gaussian-dephasing fringe visibility exp(-Delta phi^2 / 2).
pub fn visibility(result: &VarianceResult) -> f64 {
    (-0.5 * result.delta_phi_sq).exp()
}
