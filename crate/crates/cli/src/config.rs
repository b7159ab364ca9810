//! JSON run configuration. Every physical quantity is in SI with its unit in
//! the key name; every key is optional and falls back to the reference
//! silica setup.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use gw_decohere_core::model::{DEFAULT_CROSS_FRACTION, DEFAULT_OMEGA_CUTOFF, HBAR, HUBBLE_RATE, SILICA_DENSITY, SPEED_OF_LIGHT};
use gw_decohere_core::{
    BandwidthModel, FilterShape, GWBackground, InterferometerConfig, PhysicalConstants,
    QuadratureSettings, SphereSpec, TailPolicy,
};

use gw_decohere_core::oracle::log_spaced;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "kebab-case")]
pub enum Job {
    Variance,
    CriticalRadius,
    Fig3,
    PaperTable,
    Oracle,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum BandwidthSpec {
    FixedGammaTau { gamma_tau: f64 },
    SingleInterferometer,
    CrossCorrelated {
        #[serde(default = "default_fraction")]
        fraction: f64,
    },
}

fn default_fraction() -> f64 {
    DEFAULT_CROSS_FRACTION
}

impl From<BandwidthSpec> for BandwidthModel {
    fn from(b: BandwidthSpec) -> Self {
        match b {
            BandwidthSpec::FixedGammaTau { gamma_tau } => BandwidthModel::FixedGammaTau(gamma_tau),
            BandwidthSpec::SingleInterferometer => BandwidthModel::SingleInterferometer,
            BandwidthSpec::CrossCorrelated { fraction } => BandwidthModel::CrossCorrelated { fraction },
        }
    }
}

impl BandwidthSpec {
    pub fn label(&self) -> &'static str {
        match self {
            BandwidthSpec::FixedGammaTau { .. } => "fixed_gamma_tau",
            BandwidthSpec::SingleInterferometer => "single_interferometer",
            BandwidthSpec::CrossCorrelated { .. } => "cross_correlated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterSpec {
    Lorentzian,
    SharpCutoff,
}

impl From<FilterSpec> for FilterShape {
    fn from(f: FilterSpec) -> Self {
        match f {
            FilterSpec::Lorentzian => FilterShape::Lorentzian,
            FilterSpec::SharpCutoff => FilterShape::SharpCutoff,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodSpec {
    /// Quadrature variance / root-find on it.
    Exact,
    /// Closed-form approximation of the variance.
    Approx,
    /// Closed-form critical radius.
    ClosedForm,
    /// Root-find on the approximate variance.
    ApproxRootFind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConstantsSpec {
    pub hubble_rate_1_s: f64,
    pub hbar_j_s: f64,
    pub c_m_s: f64,
}

impl Default for ConstantsSpec {
    fn default() -> Self {
        ConstantsSpec {
            hubble_rate_1_s: HUBBLE_RATE,
            hbar_j_s: HBAR,
            c_m_s: SPEED_OF_LIGHT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSpec {
    ExplicitToCutoff,
    AsymptoticTail,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub tail_policy: TailSpec,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        let d = QuadratureSettings::default();
        QuadratureSpec {
            rel_tol: d.rel_tol,
            abs_tol: d.abs_tol,
            max_subdivisions: d.max_subdivisions,
            tail_policy: TailSpec::AsymptoticTail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig3Spec {
    pub gamma_tau_min: f64,
    pub gamma_tau_max: f64,
    pub points: usize,
    /// Explicit grid; overrides min/max/points when present.
    pub gamma_tau_values: Option<Vec<f64>>,
    pub omega_c_tau: f64,
}

impl Default for Fig3Spec {
    fn default() -> Self {
        Fig3Spec {
            gamma_tau_min: 1e-2,
            gamma_tau_max: 1e3,
            points: 61,
            gamma_tau_values: None,
            omega_c_tau: 1e5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleSpec {
    pub modes: usize,
    pub realizations: usize,
    /// Lowest mode, as omega * tau.
    pub x_min: f64,
    /// Highest mode, as omega * tau (capped at the band cut-off).
    pub x_max: f64,
}

impl Default for OracleSpec {
    fn default() -> Self {
        OracleSpec {
            modes: 1000,
            realizations: 10_000,
            x_min: 1e-3,
            x_max: 1e3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    RadiusM,
    DensityKgM3,
    VMS,
    AlphaRad,
    OmegaGw,
    OmegaCRadS,
    GammaTau,
}

impl SweepParameter {
    pub fn key(&self) -> &'static str {
        match self {
            SweepParameter::RadiusM => "radius_m",
            SweepParameter::DensityKgM3 => "density_kg_m3",
            SweepParameter::VMS => "v_m_s",
            SweepParameter::AlphaRad => "alpha_rad",
            SweepParameter::OmegaGw => "omega_gw",
            SweepParameter::OmegaCRadS => "omega_c_rad_s",
            SweepParameter::GammaTau => "gamma_tau",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default = "default_scale")]
    pub scale: SweepScale,
}

fn default_scale() -> SweepScale {
    SweepScale::Log
}

impl SweepSpec {
    pub fn grid(&self) -> Vec<f64> {
        match self.scale {
            SweepScale::Log => log_spaced(self.min, self.max, self.points),
            SweepScale::Linear => {
                let n = self.points;
                (0..n)
                    .map(|i| {
                        if i + 1 == n {
                            self.max
                        } else {
                            self.min + (self.max - self.min) * (i as f64 / (n - 1) as f64)
                        }
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Optional; when present it must match the job named on the command line.
    pub job: Option<Job>,
    pub radius_m: f64,
    pub density_kg_m3: f64,
    pub v_m_s: f64,
    pub alpha_rad: f64,
    /// Defaults to `radius_m`.
    pub arm_half_separation_m: Option<f64>,
    pub omega_gw: f64,
    pub omega_c_rad_s: f64,
    pub bandwidth: BandwidthSpec,
    pub filter: FilterSpec,
    pub n: i32,
    pub method: Option<MethodSpec>,
    pub constants: ConstantsSpec,
    pub quadrature: QuadratureSpec,
    pub fig3: Fig3Spec,
    pub oracle: OracleSpec,
    pub sweep: Option<SweepSpec>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            job: None,
            radius_m: 3e-3,
            density_kg_m3: SILICA_DENSITY,
            v_m_s: 1.0,
            alpha_rad: PI / 4.0,
            arm_half_separation_m: None,
            omega_gw: 1e-15,
            omega_c_rad_s: DEFAULT_OMEGA_CUTOFF,
            bandwidth: BandwidthSpec::FixedGammaTau { gamma_tau: 1.0 },
            filter: FilterSpec::Lorentzian,
            n: 2,
            method: None,
            constants: ConstantsSpec::default(),
            quadrature: QuadratureSpec::default(),
            fig3: Fig3Spec::default(),
            oracle: OracleSpec::default(),
            sweep: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Checks that do not depend on the job.
    pub fn validate(&self, job: Job) -> Result<(), CliError> {
        if let Some(j) = self.job {
            if j != job {
                return Err(CliError::Config(format!(
                    "config is for job {j:?} but {job:?} was requested"
                )));
            }
        }
        if job == Job::Sweep {
            let sweep = self
                .sweep
                .as_ref()
                .ok_or_else(|| CliError::Config("sweep job needs a `sweep` section".into()))?;
            if sweep.points < 2 {
                return Err(CliError::Config("sweep needs at least 2 points".into()));
            }
            if !(sweep.min.is_finite() && sweep.max.is_finite()) {
                return Err(CliError::Config("sweep bounds must be finite".into()));
            }
            if sweep.scale == SweepScale::Log && !(sweep.min > 0.0 && sweep.max > 0.0) {
                return Err(CliError::Config("log sweep bounds must be > 0".into()));
            }
        }
        if job == Job::Fig3 {
            let f = &self.fig3;
            if f.gamma_tau_values.is_none() && (f.points < 2 || !(f.gamma_tau_min > 0.0) || !(f.gamma_tau_max > f.gamma_tau_min)) {
                return Err(CliError::Config("fig3 grid needs 0 < min < max and >= 2 points".into()));
            }
        }
        Ok(())
    }

    pub fn constants(&self) -> PhysicalConstants {
        PhysicalConstants {
            hubble_rate: self.constants.hubble_rate_1_s,
            hbar: self.constants.hbar_j_s,
            speed_of_light: self.constants.c_m_s,
        }
    }

    pub fn sphere(&self) -> SphereSpec {
        SphereSpec {
            radius: self.radius_m,
            density: self.density_kg_m3,
        }
    }

    pub fn interferometer(&self) -> InterferometerConfig {
        InterferometerConfig {
            velocity: self.v_m_s,
            alpha: self.alpha_rad,
            arm_half_separation: self.arm_half_separation_m.unwrap_or(self.radius_m),
            bandwidth: self.bandwidth.into(),
            filter: self.filter.into(),
        }
    }

    pub fn background(&self) -> GWBackground {
        GWBackground {
            omega_gw: self.omega_gw,
            omega_c: self.omega_c_rad_s,
        }
    }

    pub fn quadrature(&self) -> QuadratureSettings {
        QuadratureSettings {
            rel_tol: self.quadrature.rel_tol,
            abs_tol: self.quadrature.abs_tol,
            max_subdivisions: self.quadrature.max_subdivisions,
            tail_policy: match self.quadrature.tail_policy {
                TailSpec::ExplicitToCutoff => TailPolicy::ExplicitToCutoff,
                TailSpec::AsymptoticTail => TailPolicy::AsymptoticTail,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_the_reference_setup() {
        let cfg = RunConfig::from_json("{}").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.interferometer().arm_half_separation, 3e-3);
    }

    #[test]
    fn parses_tagged_bandwidth_and_units() {
        let cfg = RunConfig::from_json(
            r#"{"radius_m": 0.01, "v_m_s": 2.5, "bandwidth": {"model": "cross_correlated"},
                "filter": "sharp_cutoff", "n": 4, "method": "exact"}"#,
        )
        .unwrap();
        assert_eq!(cfg.bandwidth, BandwidthSpec::CrossCorrelated { fraction: 0.1 });
        assert_eq!(cfg.interferometer().filter, FilterShape::SharpCutoff);
        assert_eq!(cfg.method, Some(MethodSpec::Exact));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(RunConfig::from_json(r#"{"radius": 1.0}"#).is_err());
        assert!(RunConfig::from_json(r#"{"bandwidth": {"model": "servo"}}"#).is_err());
    }

    #[test]
    fn sweep_validation() {
        let mut cfg = RunConfig::default();
        assert!(cfg.validate(Job::Sweep).is_err());
        cfg.sweep = Some(SweepSpec {
            parameter: SweepParameter::RadiusM,
            min: 1e-3,
            max: 1e-2,
            points: 1,
            scale: SweepScale::Log,
        });
        assert!(cfg.validate(Job::Sweep).is_err());
        cfg.sweep.as_mut().unwrap().points = 3;
        cfg.validate(Job::Sweep).unwrap();
        let grid = cfg.sweep.unwrap().grid();
        assert!((grid[1] / 10f64.sqrt() / 1e-3 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn job_mismatch_is_rejected() {
        let cfg = RunConfig::from_json(r#"{"job": "fig3"}"#).unwrap();
        assert!(cfg.validate(Job::Fig3).is_ok());
        assert!(cfg.validate(Job::Variance).is_err());
    }
}
