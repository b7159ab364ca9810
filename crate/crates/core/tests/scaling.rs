//! Power laws of the phase variance and of the critical radius.

use std::f64::consts::PI;

use proptest::prelude::*;

use gw_decohere_core::critical::{critical_radius_closed, CriticalRadiusRequest};
use gw_decohere_core::variance::{dimensionless_integral, phase_variance};
use gw_decohere_core::{
    BandwidthModel, FilterShape, GWBackground, InterferometerConfig, PhysicalConstants,
    QuadratureSettings, SphereSpec, VarianceMethod,
};

/// RMS phase with a cut-off far above every scale in play.
fn dphi(sphere: &SphereSpec, cfg: &InterferometerConfig, method: &VarianceMethod) -> f64 {
    let bg = GWBackground { omega_gw: 1e-15, omega_c: 1e12 };
    phase_variance(sphere, cfg, &bg, &PhysicalConstants::default(), method)
        .unwrap()
        .delta_phi()
}

fn methods() -> [VarianceMethod; 2] {
    [VarianceMethod::Exact(QuadratureSettings::default()), VarianceMethod::Approx(2)]
}

#[test]
fn rms_phase_is_linear_in_mass() {
    let a = SphereSpec::new(3e-3, 2329.0).unwrap();
    let b = SphereSpec::new(3e-3, 2.0 * 2329.0).unwrap();
    let cfg = InterferometerConfig::for_sphere(&a, 1.0, BandwidthModel::FixedGammaTau(1.0));
    for m in methods() {
        let ratio = dphi(&b, &cfg, &m) / dphi(&a, &cfg, &m);
        assert!((ratio - 2.0).abs() < 1e-12, "{m:?}: {ratio}");
    }
}

#[test]
fn rms_phase_is_quadratic_in_arm_size() {
    let s = SphereSpec::new(3e-3, 2329.0).unwrap();
    let small = InterferometerConfig::for_sphere(&s, 1.0, BandwidthModel::FixedGammaTau(1.0));
    let large = InterferometerConfig { arm_half_separation: 6e-3, ..small };
    for m in methods() {
        let ratio = dphi(&s, &large, &m) / dphi(&s, &small, &m);
        assert!((ratio - 4.0).abs() < 1e-9, "{m:?}: {ratio}");
    }
}

#[test]
fn rms_phase_angle_dependence() {
    // (v tau)^2 brings 1/sin^2(alpha); the response carries sin(2 alpha).
    let s = SphereSpec::new(3e-3, 2329.0).unwrap();
    let base = InterferometerConfig::for_sphere(&s, 1.0, BandwidthModel::FixedGammaTau(1.0));
    for m in methods() {
        let reference = dphi(&s, &base, &m);
        for alpha in [0.2, 0.5, 1.0, 1.4] {
            let cfg = InterferometerConfig { alpha, ..base };
            let expected = (0.5 / alpha.sin().powi(2)) * (2.0 * alpha).sin();
            let ratio = dphi(&s, &cfg, &m) / reference;
            assert!((ratio / expected - 1.0).abs() < 1e-9, "{alpha}");
        }
    }
}

#[test]
fn sphere_coupled_phase_grows_as_fifth_power() {
    let k = PhysicalConstants::default();
    let bg = GWBackground::new(1e-15);
    for bw in [BandwidthModel::SingleInterferometer, BandwidthModel::FixedGammaTau(2.0)] {
        let at = |r: f64| {
            let s = SphereSpec::new(r, 2329.0).unwrap();
            let cfg = InterferometerConfig::for_sphere(&s, 1.0, bw);
            phase_variance(&s, &cfg, &bg, &k, &VarianceMethod::Exact(QuadratureSettings::default()))
                .unwrap()
                .delta_phi()
        };
        for r in [1e-4, 1e-3, 1e-2] {
            let ratio = at(2.0 * r) / at(r);
            assert!((ratio / 32.0 - 1.0).abs() < 1e-7, "{bw:?} {r}: {ratio}");
        }
    }
}

#[test]
fn cutoff_insensitivity() {
    let s = QuadratureSettings::default();
    // The sharp filter removes everything below gt, so for gt >~ 30 the
    // x^-5 tail past 1e3 is no longer negligible against what remains.
    let cases = [
        (FilterShape::Lorentzian, &[0.1, 0.3, 1.0, 10.0, 100.0, 1000.0][..]),
        (FilterShape::SharpCutoff, &[0.1, 0.3, 1.0, 10.0][..]),
    ];
    for (shape, gts) in cases {
        for &gt in gts {
            let lo = dimensionless_integral(gt, 1e3, shape, &s).unwrap().value;
            let hi = dimensionless_integral(gt, 1e6, shape, &s).unwrap().value;
            assert!(((hi - lo) / hi).abs() <= 1e-4, "{shape:?} {gt}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadrupole_law(
        r in 1e-5f64..1e-1,
        rho in 1e2f64..2e4,
        k_r in 0.5f64..3.0,
        k_m in 0.5f64..3.0,
        gt in 0.05f64..50.0,
    ) {
        let s = SphereSpec::new(r, rho).unwrap();
        let cfg = InterferometerConfig::for_sphere(&s, 1.0, BandwidthModel::FixedGammaTau(gt));
        let s2 = SphereSpec::new(r, rho * k_m).unwrap();
        let cfg2 = InterferometerConfig { arm_half_separation: r * k_r, ..cfg };
        let m = VarianceMethod::Approx(2);
        let ratio = dphi(&s2, &cfg2, &m) / dphi(&s, &cfg, &m);
        prop_assert!((ratio / (k_m * k_r * k_r) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn critical_radius_power_laws(
        rho in 1e2f64..1e18,
        omega in 1e-20f64..1e-8,
        scale in 0.1f64..10.0,
    ) {
        let k = PhysicalConstants::default();
        let req = CriticalRadiusRequest::new(rho, GWBackground::new(omega), 1.0, BandwidthModel::FixedGammaTau(1.0));
        let base = critical_radius_closed(&req, &k).unwrap();
        let denser = CriticalRadiusRequest { density: rho * scale, ..req };
        let louder = CriticalRadiusRequest { background: GWBackground::new(omega * scale), ..req };
        let r_d = critical_radius_closed(&denser, &k).unwrap();
        let r_o = critical_radius_closed(&louder, &k).unwrap();
        prop_assert!((r_d / base / scale.powf(-0.2) - 1.0).abs() < 1e-12);
        prop_assert!((r_o / base / scale.powf(-0.1) - 1.0).abs() < 1e-12);
        prop_assert!(base.is_finite() && base > 0.0);
    }

    #[test]
    fn critical_radius_scales_with_hubble_rate(h in 1e-19f64..1e-17) {
        let k = PhysicalConstants { hubble_rate: h, ..PhysicalConstants::default() };
        let req = CriticalRadiusRequest::new(2329.0, GWBackground::new(1e-15), 1.0, BandwidthModel::SingleInterferometer);
        let r = critical_radius_closed(&req, &k).unwrap();
        let r0 = critical_radius_closed(&req, &PhysicalConstants::default()).unwrap();
        prop_assert!((r / r0 / (h / 2.4e-18).powf(-0.2) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn rms_phase_at_reference_angle_has_no_extra_factor() {
    let s = SphereSpec::new(3e-3, 2329.0).unwrap();
    let cfg = InterferometerConfig::for_sphere(&s, 1.0, BandwidthModel::FixedGammaTau(1.0));
    assert!((cfg.alpha - PI / 4.0).abs() < 1e-16);
    assert!(((2.0 * cfg.alpha).sin() - 1.0).abs() < 1e-15);
}
