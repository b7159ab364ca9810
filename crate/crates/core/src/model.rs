//! Physical constants and the domain records shared by every computation:
//! the interfering sphere, the interferometer geometry and bandwidth model,
//! and the gravitational-wave background.

use std::f64::consts::PI;

use crate::error::{require_non_negative, require_positive, Error, Result};

/// Hubble parameter used for all reproduced numbers, in 1/s.
pub const HUBBLE_RATE: f64 = 2.4e-18;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Default band cut-off of the scale-invariant spectrum, 2*pi*1 GHz in rad/s.
pub const DEFAULT_OMEGA_CUTOFF: f64 = 2.0 * PI * 1.0e9;
/// Fraction of the pi*c/R cross-correlation ceiling used as the bandwidth.
pub const DEFAULT_CROSS_FRACTION: f64 = 0.1;
/// Density of silica used for the reference numbers, kg/m^3.
pub const SILICA_DENSITY: f64 = 2329.0;

/// Constants entering the phase variance. Carried explicitly so that
/// sensitivity studies can vary them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// H0 in 1/s.
    pub hubble_rate: f64,
    /// J s.
    pub hbar: f64,
    /// m/s.
    pub speed_of_light: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            hubble_rate: HUBBLE_RATE,
            hbar: HBAR,
            speed_of_light: SPEED_OF_LIGHT,
        }
    }
}

impl PhysicalConstants {
    pub fn validate(&self) -> Result<()> {
        require_positive("hubble_rate", self.hubble_rate)?;
        require_positive("hbar", self.hbar)?;
        require_positive("speed_of_light", self.speed_of_light)?;
        Ok(())
    }
}

/// A uniform solid sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSpec {
    /// m
    pub radius: f64,
    /// kg/m^3
    pub density: f64,
}

impl SphereSpec {
    pub fn new(radius: f64, density: f64) -> Result<Self> {
        let s = SphereSpec { radius, density };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("radius", self.radius)?;
        require_positive("density", self.density)?;
        Ok(())
    }

    /// Mass in kg, (4/3) pi R^3 rho.
    pub fn mass(&self) -> f64 {
        4.0 / 3.0 * PI * self.radius.powi(3) * self.density
    }
}

pub fn sphere_mass(sphere: &SphereSpec) -> f64 {
    sphere.mass()
}

/// How the high-pass bandwidth gamma of the interferometer is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandwidthModel {
    /// gamma*tau given directly.
    FixedGammaTau(f64),
    /// A single device acquiring one data point per transit, gamma = v/2R.
    SingleInterferometer,
    /// An array of cross-correlated devices spaced by 2R, gamma = fraction * pi c / R.
    CrossCorrelated { fraction: f64 },
}

impl BandwidthModel {
    pub fn cross_correlated() -> Self {
        BandwidthModel::CrossCorrelated {
            fraction: DEFAULT_CROSS_FRACTION,
        }
    }
}

/// Shape of the high-pass filter applied to the phase noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterShape {
    /// f = w^2 / (w^2 + gamma^2)
    Lorentzian,
    /// f = 0 below gamma, 1 above.
    SharpCutoff,
}

/// Mach-Zehnder geometry traversed by the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerConfig {
    /// Group velocity, m/s.
    pub velocity: f64,
    /// Half-opening angle of the arms, rad.
    pub alpha: f64,
    /// Half of the arm separation, m. Equal to the sphere radius in the
    /// reference geometry.
    pub arm_half_separation: f64,
    pub bandwidth: BandwidthModel,
    pub filter: FilterShape,
}

impl InterferometerConfig {
    /// Reference geometry: alpha = pi/4, Lorentzian filter, arm half-separation
    /// equal to the sphere radius.
    pub fn for_sphere(sphere: &SphereSpec, velocity: f64, bandwidth: BandwidthModel) -> Self {
        InterferometerConfig {
            velocity,
            alpha: PI / 4.0,
            arm_half_separation: sphere.radius,
            bandwidth,
            filter: FilterShape::Lorentzian,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("velocity", self.velocity)?;
        require_positive("arm_half_separation", self.arm_half_separation)?;
        if !(self.alpha > 0.0 && self.alpha < PI / 2.0) {
            return Err(Error::invalid("alpha", self.alpha, "must lie in (0, pi/2)"));
        }
        match self.bandwidth {
            BandwidthModel::FixedGammaTau(x) => {
                require_non_negative("gamma_tau", x)?;
            }
            BandwidthModel::SingleInterferometer => {}
            BandwidthModel::CrossCorrelated { fraction } => {
                require_positive("fraction", fraction)?;
            }
        }
        Ok(())
    }

    /// Time to traverse half of one arm, R / (v sin alpha).
    pub fn tau(&self) -> f64 {
        self.arm_half_separation / (self.velocity * self.alpha.sin())
    }

    /// Dimensionless gamma*tau for the configured bandwidth model.
    pub fn gamma_tau(&self, consts: &PhysicalConstants) -> Result<f64> {
        self.validate()?;
        let sin_a = self.alpha.sin();
        Ok(match self.bandwidth {
            BandwidthModel::FixedGammaTau(x) => x,
            BandwidthModel::SingleInterferometer => 1.0 / (2.0 * sin_a),
            BandwidthModel::CrossCorrelated { fraction } => {
                fraction * PI * consts.speed_of_light / (self.velocity * sin_a)
            }
        })
    }

    /// Filter bandwidth gamma in rad/s.
    pub fn gamma(&self, consts: &PhysicalConstants) -> Result<f64> {
        Ok(self.gamma_tau(consts)? / self.tau())
    }
}

pub fn traversal_time(cfg: &InterferometerConfig) -> f64 {
    cfg.tau()
}

pub fn resolve_gamma_tau(cfg: &InterferometerConfig, consts: &PhysicalConstants) -> Result<f64> {
    cfg.gamma_tau(consts)
}

/// Flat-spectrum background with a hard upper cut-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GWBackground {
    /// Dimensionless energy density per logarithmic frequency interval.
    pub omega_gw: f64,
    /// Angular-frequency cut-off, rad/s.
    pub omega_c: f64,
}

impl GWBackground {
    pub fn new(omega_gw: f64) -> Self {
        GWBackground {
            omega_gw,
            omega_c: DEFAULT_OMEGA_CUTOFF,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_non_negative("omega_gw", self.omega_gw)?;
        if !(self.omega_c > 0.0) {
            return Err(Error::invalid("omega_c", self.omega_c, "must be > 0"));
        }
        Ok(())
    }
}

/// How a phase variance was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarianceMethodTag {
    ExactQuadrature,
    Approximation(i32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceResult {
    /// rad^2
    pub delta_phi_sq: f64,
    pub method: VarianceMethodTag,
    /// Absolute error estimate in rad^2; present for quadrature results only.
    pub abs_error_estimate: Option<f64>,
}

impl VarianceResult {
    /// RMS phase, rad.
    pub fn delta_phi(&self) -> f64 {
        self.delta_phi_sq.sqrt()
    }
}
