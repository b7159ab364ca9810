//! First-principles cross-checks of the spectral response.
//!
//! The time-domain integrator accumulates the phase each Mach-Zehnder path
//! picks up from a single cross-polarized strain wave, with no reference to
//! the closed-form response. The Monte-Carlo synthesizes the stochastic
//! background as a sum of random-phase modes and measures the spread of the
//! output phase directly.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::model::{GWBackground, InterferometerConfig, PhysicalConstants, SphereSpec};
use crate::spectral::{strain_psd, Filter};

/// A single cross-polarized strain wave at normal incidence,
/// h(t) = amplitude * cos(omega t + phase0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonochromaticWave {
    /// rad/s
    pub omega: f64,
    /// Dimensionless strain amplitude.
    pub amplitude: f64,
    /// rad
    pub phase0: f64,
}

/// Integral of cos(omega t + psi) over [t1, t2], in product form so that
/// short segments do not cancel.
fn cos_segment(omega: f64, psi: f64, t1: f64, t2: f64) -> f64 {
    let mid = 0.5 * (t1 + t2);
    let half = 0.5 * (t2 - t1);
    2.0 * (omega * mid + psi).cos() * (omega * half).sin() / omega
}

/// Phase difference (rad) between the two paths for a sphere launched at
/// `t0`.
///
/// Each path is two straight legs of duration tau at angles +/-alpha to the
/// beam axis. A cross-polarized wave couples to the velocity product
/// v_x v_y, so a leg accumulates phase at the rate
/// `(m / hbar) h(t) v^2 sin(alpha) cos(alpha)` with the sign of its v_y.
/// Path 1 goes up then down, path 2 is its mirror image.
pub fn timedomain_phase(
    wave: &MonochromaticWave,
    sphere: &SphereSpec,
    cfg: &InterferometerConfig,
    consts: &PhysicalConstants,
    t0: f64,
) -> f64 {
    let tau = cfg.tau();
    let v = cfg.velocity;
    let rate = sphere.mass() / consts.hbar * wave.amplitude * v * v * cfg.alpha.sin() * cfg.alpha.cos();
    let psi = wave.phase0 + wave.omega * t0;
    let first = cos_segment(wave.omega, psi, 0.0, tau);
    let second = cos_segment(wave.omega, psi, tau, 2.0 * tau);
    // (v_y sign) per leg
    let path1 = rate * (first - second);
    let path2 = rate * (-first + second);
    path1 - path2
}

/// max over phase0 of |timedomain_phase| / amplitude. The phase is
/// linear in (cos phase0, sin phase0), so two quadrature evaluations give the
/// maximum exactly.
pub fn transfer_amplitude(
    omega: f64,
    sphere: &SphereSpec,
    cfg: &InterferometerConfig,
    consts: &PhysicalConstants,
) -> f64 {
    let (c, s) = quadrature_response(omega, sphere, cfg, consts);
    c.hypot(s)
}

/// Unit-amplitude phase at phase0 = 0 and phase0 = pi/2.
fn quadrature_response(
    omega: f64,
    sphere: &SphereSpec,
    cfg: &InterferometerConfig,
    consts: &PhysicalConstants,
) -> (f64, f64) {
    let at = |phase0| {
        let w = MonochromaticWave {
            omega,
            amplitude: 1.0,
            phase0,
        };
        timedomain_phase(&w, sphere, cfg, consts, 0.0)
    };
    (at(0.0), at(PI / 2.0))
}

/// Discrete set of background modes with independent uniform phases.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeEnsemble {
    /// Strictly ascending, rad/s.
    pub omega_grid: Vec<f64>,
    /// Strain amplitude of each mode.
    pub amplitudes: Vec<f64>,
    pub seed: u64,
    pub n_realizations: usize,
}

impl ModeEnsemble {
    pub fn new(omega_grid: Vec<f64>, amplitudes: Vec<f64>, seed: u64, n_realizations: usize) -> Result<Self> {
        let ens = ModeEnsemble {
            omega_grid,
            amplitudes,
            seed,
            n_realizations,
        };
        ens.validate()?;
        Ok(ens)
    }

    /// Amplitudes a_k = sqrt(S_h(omega_k) d_omega_k / pi) with trapezoidal
    /// weights, so that sum(a_k^2 / 2 * g(omega_k)) is the trapezoid rule
    /// for the integral of S_h g d_omega / (2 pi).
    pub fn for_background(
        omega_grid: Vec<f64>,
        bg: &GWBackground,
        consts: &PhysicalConstants,
        seed: u64,
        n_realizations: usize,
    ) -> Result<Self> {
        if omega_grid.len() < 2 {
            return Err(Error::invalid(
                "omega_grid",
                omega_grid.len() as f64,
                "needs at least two modes to define band widths",
            ));
        }
        let weights = trapezoid_widths(&omega_grid);
        let amplitudes = omega_grid
            .iter()
            .zip(&weights)
            .map(|(&w, &dw)| Ok((strain_psd(w, bg, consts)? * dw / PI).sqrt()))
            .collect::<Result<Vec<_>>>()?;
        ModeEnsemble::new(omega_grid, amplitudes, seed, n_realizations)
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega_grid.is_empty() {
            return Err(Error::invalid("omega_grid", 0.0, "must not be empty"));
        }
        if self.omega_grid.len() != self.amplitudes.len() {
            return Err(Error::invalid(
                "amplitudes",
                self.amplitudes.len() as f64,
                "length must match omega_grid",
            ));
        }
        for &w in &self.omega_grid {
            require_positive("omega", w)?;
        }
        if self.omega_grid.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::invalid("omega_grid", f64::NAN, "must be strictly ascending"));
        }
        for &a in &self.amplitudes {
            require_non_negative("amplitude", a)?;
        }
        if self.n_realizations < 2 {
            return Err(Error::invalid(
                "n_realizations",
                self.n_realizations as f64,
                "need at least two realizations for a variance",
            ));
        }
        Ok(())
    }
}

fn trapezoid_widths(grid: &[f64]) -> Vec<f64> {
    let n = grid.len();
    (0..n)
        .map(|k| {
            let lo = if k == 0 { grid[0] } else { grid[k - 1] };
            let hi = if k + 1 == n { grid[n - 1] } else { grid[k + 1] };
            0.5 * (hi - lo)
        })
        .collect()
}

/// `n` points from `lo` to `hi` inclusive, equally spaced in log.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == n {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McStats {
    /// rad
    pub mean: f64,
    /// Unbiased sample variance, rad^2.
    pub variance: f64,
    /// Standard error of `variance`, rad^2.
    pub stderr: f64,
}

/// Output phase of one realization: every mode gets an independent uniform
/// phase drawn from the stream (seed, realization).
fn realization_phase(seed: u64, index: u64, coeffs: &[(f64, f64)]) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    coeffs
        .iter()
        .map(|&(c, s)| {
            let phi = rng.random::<f64>() * 2.0 * PI;
            let (sin, cos) = phi.sin_cos();
            c * cos + s * sin
        })
        .sum()
}

/// Monte-Carlo estimate of the phase variance for the filtered background
/// represented by `ens`. Modes above the background cut-off carry no power.
///
/// Realizations run in parallel; each draws from its own ChaCha8 stream
/// keyed by (seed, realization index), and the reduction runs in index
/// order, so the statistics are bit-identical across thread counts.
pub fn mc_phase_variance(
    ens: &ModeEnsemble,
    sphere: &SphereSpec,
    cfg: &InterferometerConfig,
    bg: &GWBackground,
    consts: &PhysicalConstants,
) -> Result<McStats> {
    ens.validate()?;
    sphere.validate()?;
    cfg.validate()?;
    bg.validate()?;
    let filter = Filter::new(cfg.filter, cfg.gamma(consts)?)?;

    let coeffs: Vec<(f64, f64)> = ens
        .omega_grid
        .iter()
        .zip(&ens.amplitudes)
        .map(|(&w, &a)| {
            if w > bg.omega_c {
                return (0.0, 0.0);
            }
            let scale = a * filter.weight(w).sqrt();
            let (c, s) = quadrature_response(w, sphere, cfg, consts);
            (scale * c, scale * s)
        })
        .collect();

    let phases: Vec<f64> = (0..ens.n_realizations as u64)
        .into_par_iter()
        .map(|r| realization_phase(ens.seed, r, &coeffs))
        .collect();

    Ok(sample_stats(&phases))
}

fn sample_stats(x: &[f64]) -> McStats {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let (m2, m4) = x.iter().fold((0.0, 0.0), |(m2, m4), &v| {
        let d2 = (v - mean).powi(2);
        (m2 + d2, m4 + d2 * d2)
    });
    let variance = m2 / (n - 1.0);
    let (m2, m4) = (m2 / n, m4 / n);
    McStats {
        mean,
        variance,
        stderr: ((m4 - m2 * m2).max(0.0) / n).sqrt(),
    }
}
