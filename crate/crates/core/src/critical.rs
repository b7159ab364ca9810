//! Critical sphere radius at which the RMS phase reaches pi, for a uniform
//! sphere traversing an interferometer whose arm half-separation equals its
//! radius.

use std::f64::consts::PI;

use crate::error::{require_positive, Error, Result};
use crate::model::{
    BandwidthModel, FilterShape, GWBackground, InterferometerConfig, PhysicalConstants, SphereSpec,
    DEFAULT_CROSS_FRACTION,
};
use crate::root::brent;
use crate::variance::{
    approx_denominator, phase_variance, QuadratureSettings, VarianceMethod,
};

/// Radii scanned (one point per decade) for a sign change before refining.
pub const BRACKET_LO: f64 = 1e-9;
pub const BRACKET_HI: f64 = 1e3;

/// Relative accuracy of the solved radius.
const RADIUS_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalMethod {
    /// Invert the approximate variance analytically.
    ClosedForm,
    /// Root-find on the quadrature variance.
    ExactRootFind(QuadratureSettings),
    /// Root-find on the approximate variance; an algebra check on the closed form.
    ApproxRootFind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRadiusRequest {
    /// kg/m^3
    pub density: f64,
    pub background: GWBackground,
    /// m/s
    pub velocity: f64,
    /// rad
    pub alpha: f64,
    pub bandwidth: BandwidthModel,
    pub filter: FilterShape,
    /// Exponent of the approximation, 2 (Lorentzian) or 4 (sharp cut-off).
    pub n: i32,
    pub method: CriticalMethod,
}

impl CriticalRadiusRequest {
    /// Lorentzian filter, alpha = pi/4, n = 2, closed form.
    pub fn new(density: f64, background: GWBackground, velocity: f64, bandwidth: BandwidthModel) -> Self {
        CriticalRadiusRequest {
            density,
            background,
            velocity,
            alpha: PI / 4.0,
            bandwidth,
            filter: FilterShape::Lorentzian,
            n: 2,
            method: CriticalMethod::ClosedForm,
        }
    }

    pub fn with_method(mut self, method: CriticalMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_exponent(mut self, n: i32) -> Self {
        self.n = n;
        self
    }

    fn validate(&self, consts: &PhysicalConstants) -> Result<()> {
        require_positive("density", self.density)?;
        require_positive("velocity", self.velocity)?;
        self.background.validate()?;
        consts.validate()?;
        self.config(1.0).validate()?;
        if self.background.omega_gw == 0.0 {
            return Err(Error::NoDecoherence);
        }
        Ok(())
    }

    /// Sphere of the given radius at the requested density.
    pub fn sphere(&self, radius: f64) -> SphereSpec {
        SphereSpec {
            radius,
            density: self.density,
        }
    }

    /// Interferometer sized for a sphere of the given radius.
    pub fn config(&self, radius: f64) -> InterferometerConfig {
        InterferometerConfig {
            velocity: self.velocity,
            alpha: self.alpha,
            arm_half_separation: radius,
            bandwidth: self.bandwidth,
            filter: self.filter,
        }
    }

    /// gamma*tau; the same for every radius under the provided models.
    pub fn gamma_tau(&self, consts: &PhysicalConstants) -> Result<f64> {
        self.config(1.0).gamma_tau(consts)
    }
}

/// Closed-form critical radius in m.
///
/// With alpha = pi/4 this is
/// `(sqrt(3) pi hbar^2 / (512 H0^2))^(1/10) D^(1/10) / (rho^(1/5) Omega^(1/10))`
/// where `D = 1 + 20 (gamma tau)^(1/4) + 10 (gamma tau)^n`. Other angles
/// carry an extra `(4 sin^4(alpha) / sin^2(2 alpha))^(1/10)`.
pub fn critical_radius_closed(req: &CriticalRadiusRequest, consts: &PhysicalConstants) -> Result<f64> {
    req.validate(consts)?;
    let gamma_tau = req.gamma_tau(consts)?;
    let d = approx_denominator(gamma_tau, req.n);
    let geometry = 4.0 * req.alpha.sin().powi(4) / (2.0 * req.alpha).sin().powi(2);
    let r10 = 3f64.sqrt() * PI * consts.hbar.powi(2) * d * geometry
        / (512.0 * consts.hubble_rate.powi(2) * req.background.omega_gw * req.density.powi(2));
    Ok(r10.powf(0.1))
}

/// Critical radius found by solving Delta phi(R) = pi on the variance
/// pipeline selected by `req.method` (`ClosedForm` solves on the
/// approximation, like `ApproxRootFind`).
pub fn critical_radius_solve(req: &CriticalRadiusRequest, consts: &PhysicalConstants) -> Result<f64> {
    req.validate(consts)?;
    let method = match req.method {
        CriticalMethod::ExactRootFind(settings) => VarianceMethod::Exact(settings),
        CriticalMethod::ApproxRootFind | CriticalMethod::ClosedForm => VarianceMethod::Approx(req.n),
    };
    let target = (PI * PI).ln();
    // Work in ln R: ln(dphi^2) is close to linear there (slope 10).
    let residual = |ln_r: f64| -> Result<f64> {
        let r = ln_r.exp();
        let v = phase_variance(&req.sphere(r), &req.config(r), &req.background, consts, &method)?;
        Ok(v.delta_phi_sq.ln() - target)
    };

    let mut lo = BRACKET_LO.ln();
    let mut f_lo = residual(lo)?;
    let decade = 10f64.ln();
    let steps = (BRACKET_HI / BRACKET_LO).log10().round() as usize;
    for _ in 0..steps {
        let hi = lo + decade;
        let f_hi = residual(hi)?;
        if f_lo == 0.0 {
            return Ok(lo.exp());
        }
        if f_lo.signum() != f_hi.signum() {
            let ln_r = brent(residual, lo, hi, RADIUS_RTOL)?;
            return Ok(ln_r.exp());
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::BracketNotFound {
        lo: BRACKET_LO,
        hi: BRACKET_HI,
    })
}

/// Dispatches on `req.method`.
pub fn critical_radius(req: &CriticalRadiusRequest, consts: &PhysicalConstants) -> Result<f64> {
    match req.method {
        CriticalMethod::ClosedForm => critical_radius_closed(req, consts),
        _ => critical_radius_solve(req, consts),
    }
}

/// Factor by which cross-correlation with bandwidth `fraction * pi c / R`
/// raises the critical radius, `(pi c fraction / v)^(n/10)`.
pub fn cross_correlation_multiplier_with_fraction(
    velocity: f64,
    n: i32,
    consts: &PhysicalConstants,
    fraction: f64,
) -> f64 {
    (PI * consts.speed_of_light * fraction / velocity).powf(n as f64 / 10.0)
}

/// `(pi c / (10 v))^(n/10)`.
pub fn cross_correlation_multiplier(velocity: f64, n: i32, consts: &PhysicalConstants) -> f64 {
    cross_correlation_multiplier_with_fraction(velocity, n, consts, DEFAULT_CROSS_FRACTION)
}

/// Boundaries of the point-like, long-wavelength treatment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValidityWarning {
    /// omega_c R >= c: the shortest waves in the band are not long compared
    /// to the sphere.
    PointLikeLimit,
    /// gamma exceeds pi c / (10 R).
    BandwidthLimit,
}

impl ValidityWarning {
    pub fn code(&self) -> &'static str {
        match self {
            ValidityWarning::PointLikeLimit => "point_like_limit",
            ValidityWarning::BandwidthLimit => "bandwidth_limit",
        }
    }
}

/// Warnings for an interferometer of arm half-separation
/// `cfg.arm_half_separation` in background `bg`.
pub fn config_warnings(
    cfg: &InterferometerConfig,
    bg: &GWBackground,
    consts: &PhysicalConstants,
) -> Vec<ValidityWarning> {
    let radius = cfg.arm_half_separation;
    let mut out = Vec::new();
    if radius * bg.omega_c > consts.speed_of_light {
        out.push(ValidityWarning::PointLikeLimit);
    }
    if let Ok(gamma) = cfg.gamma(consts) {
        let ceiling = PI * consts.speed_of_light / (10.0 * radius);
        // The default cross-correlated model sits exactly on the ceiling.
        if gamma > ceiling * (1.0 + 1e-9) {
            out.push(ValidityWarning::BandwidthLimit);
        }
    }
    out
}

/// Warnings for a sphere of radius `radius` under `req`.
pub fn validity_warnings(
    radius: f64,
    req: &CriticalRadiusRequest,
    consts: &PhysicalConstants,
) -> Vec<ValidityWarning> {
    config_warnings(&req.config(radius), &req.background, consts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SILICA_DENSITY;

    fn consts() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    fn silica(omega_gw: f64) -> CriticalRadiusRequest {
        CriticalRadiusRequest::new(
            SILICA_DENSITY,
            GWBackground::new(omega_gw),
            1.0,
            BandwidthModel::FixedGammaTau(1.0),
        )
    }

    #[test]
    fn closed_form_matches_literal_expression() {
        let k = consts();
        let r = critical_radius_closed(&silica(1e-15), &k).unwrap();
        let literal = (3f64.sqrt() * PI * k.hbar.powi(2) / (512.0 * k.hubble_rate.powi(2))).powf(0.1)
            * 31f64.powf(0.1)
            / (SILICA_DENSITY.powf(0.2) * 1e-15f64.powf(0.1));
        assert!((r / literal - 1.0).abs() < 1e-13);
        assert!((r - 3.2e-3).abs() < 0.1e-3, "{r}");
    }

    #[test]
    fn reference_radii() {
        let k = consts();
        let r15 = critical_radius_closed(&silica(1e-15), &k).unwrap();
        let r19 = critical_radius_closed(&silica(1e-19), &k).unwrap();
        assert!((r19 - 8e-3).abs() < 0.2e-3, "{r19}");
        assert!((r19 / r15 / 10f64.powf(0.4) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_scaling() {
        let k = consts();
        let base = critical_radius_closed(&silica(1e-15), &k).unwrap();
        let mut dense = silica(1e-15);
        dense.density *= 32.0;
        let r = critical_radius_closed(&dense, &k).unwrap();
        assert!((r / base - 0.5).abs() < 1e-13);
    }

    #[test]
    fn quiet_background_has_no_critical_radius() {
        let k = consts();
        let req = silica(0.0);
        assert_eq!(critical_radius_closed(&req, &k), Err(Error::NoDecoherence));
        let exact = req.with_method(CriticalMethod::ExactRootFind(QuadratureSettings::default()));
        assert_eq!(critical_radius_solve(&exact, &k), Err(Error::NoDecoherence));
    }

    #[test]
    fn approx_root_find_inverts_closed_form() {
        let k = consts();
        for alpha in [0.3, PI / 4.0, 1.2] {
            for bw in [
                BandwidthModel::FixedGammaTau(1.0),
                BandwidthModel::SingleInterferometer,
                BandwidthModel::cross_correlated(),
            ] {
                for n in [2, 4] {
                    let mut req = silica(1e-15).with_exponent(n);
                    req.alpha = alpha;
                    req.bandwidth = bw;
                    let closed = critical_radius_closed(&req, &k).unwrap();
                    let solved = critical_radius_solve(
                        &req.with_method(CriticalMethod::ApproxRootFind),
                        &k,
                    )
                    .unwrap();
                    assert!((solved / closed - 1.0).abs() < 1e-9, "{alpha} {bw:?} {n}");
                }
            }
        }
    }

    #[test]
    fn exact_root_find_lands_on_pi() {
        let k = consts();
        let settings = QuadratureSettings::default();
        let req = silica(1e-15).with_method(CriticalMethod::ExactRootFind(settings));
        let r = critical_radius_solve(&req, &k).unwrap();
        let v = phase_variance(
            &req.sphere(r),
            &req.config(r),
            &req.background,
            &k,
            &VarianceMethod::Exact(settings),
        )
        .unwrap();
        assert!((v.delta_phi() / PI - 1.0).abs() < 1e-10);
        // The 1/10 power compresses the ~12% integral gap to ~1.2% in R.
        let closed = critical_radius_closed(&req, &k).unwrap();
        let gap = (r / closed - 1.0).abs();
        assert!(gap < 0.25, "{gap}");
    }

    #[test]
    fn phase_grows_as_fifth_power_of_radius() {
        let k = consts();
        let req = silica(1e-15);
        let settings = QuadratureSettings::default();
        let dphi = |r: f64| {
            phase_variance(
                &req.sphere(r),
                &req.config(r),
                &req.background,
                &k,
                &VarianceMethod::Exact(settings),
            )
            .unwrap()
            .delta_phi()
        };
        // omega_c tau >> 1 here, so the cut-off does not matter.
        let ratio = dphi(2e-3) / dphi(1e-3);
        assert!((ratio / 32.0 - 1.0).abs() < 1e-8, "{ratio}");
    }

    #[test]
    fn independent_of_velocity_for_r_independent_models() {
        let k = consts();
        for bw in [BandwidthModel::FixedGammaTau(0.7), BandwidthModel::SingleInterferometer] {
            let mut base = silica(1e-15);
            base.bandwidth = bw;
            let r0 = critical_radius_closed(&base, &k).unwrap();
            for v in [0.01, 1.0, 100.0] {
                let mut req = base;
                req.velocity = v;
                let r = critical_radius_closed(&req, &k).unwrap();
                assert!((r / r0 - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn single_interferometer_close_to_unit_gamma_tau() {
        let k = consts();
        let mut req = silica(1e-15);
        let unit = critical_radius_closed(&req, &k).unwrap();
        req.bandwidth = BandwidthModel::SingleInterferometer;
        let single = critical_radius_closed(&req, &k).unwrap();
        assert!((single / unit - 1.0).abs() < 0.03);
    }

    #[test]
    fn multiplier_values() {
        let k = consts();
        let m2 = cross_correlation_multiplier(1.0, 2, &k);
        let m4 = cross_correlation_multiplier(1.0, 4, &k);
        assert!((m2 - 39.4).abs() < 0.1, "{m2}");
        assert!((m4 / 1.55e3 - 1.0).abs() < 0.01, "{m4}");
        assert!((m4 - m2 * m2).abs() < 1e-9 * m4);
        let unity = cross_correlation_multiplier(PI * k.speed_of_light / 10.0, 4, &k);
        assert!((unity - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cross_correlated_velocity_dependence_follows_multiplier() {
        let k = consts();
        let mut single = silica(1e-15);
        single.bandwidth = BandwidthModel::SingleInterferometer;
        let r_single = critical_radius_closed(&single, &k).unwrap();
        let cross = |v: f64, n: i32| {
            let mut req = silica(1e-15).with_exponent(n);
            req.bandwidth = BandwidthModel::cross_correlated();
            req.velocity = v;
            critical_radius_closed(&req, &k).unwrap()
        };
        // Against the single-device radius the n = 2 multiplier is within 2%.
        let ratio = cross(1.0, 2) / r_single;
        let m = cross_correlation_multiplier(1.0, 2, &k);
        assert!((ratio / m - 1.0).abs() < 0.02, "{ratio} vs {m}");
        // Where 10 (gt)^n dominates, v enters only through (1/v)^(n/10).
        for n in [2, 4] {
            for (v1, v2) in [(0.01, 1.0), (1.0, 100.0)] {
                let got = cross(v1, n) / cross(v2, n);
                let want = cross_correlation_multiplier(v1, n, &k) / cross_correlation_multiplier(v2, n, &k);
                assert!((got / want - 1.0).abs() < 1e-6, "{n} {v1} {v2}");
            }
        }
    }

    #[test]
    fn warnings() {
        let k = consts();
        let req = silica(1e-15);
        assert!(validity_warnings(3e-3, &req, &k).is_empty());
        assert_eq!(
            validity_warnings(0.1, &req, &k),
            vec![ValidityWarning::PointLikeLimit]
        );
        let mut cross = req;
        cross.bandwidth = BandwidthModel::cross_correlated();
        assert!(validity_warnings(3e-3, &cross, &k).is_empty());
        cross.bandwidth = BandwidthModel::CrossCorrelated { fraction: 0.5 };
        assert_eq!(
            validity_warnings(3e-3, &cross, &k),
            vec![ValidityWarning::BandwidthLimit]
        );
    }
}
