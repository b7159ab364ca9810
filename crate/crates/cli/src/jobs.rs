//! One function per CLI job. Each returns a table plus any non-fatal notes.

use std::f64::consts::PI;

use rayon::prelude::*;

use gw_decohere_core::critical::{
    config_warnings, critical_radius, critical_radius_closed, critical_radius_solve,
    cross_correlation_multiplier_with_fraction, validity_warnings, CriticalMethod,
    CriticalRadiusRequest, ValidityWarning,
};
use gw_decohere_core::model::SILICA_DENSITY;
use gw_decohere_core::oracle::{log_spaced, mc_phase_variance, transfer_amplitude, ModeEnsemble};
use gw_decohere_core::spectral::response_a;
use gw_decohere_core::variance::{
    approx_integral, dimensionless_integral, is_fitted_exponent, phase_variance, visibility,
};
use gw_decohere_core::{
    BandwidthModel, Error, FilterShape, GWBackground, VarianceMethod,
};

use crate::config::{BandwidthSpec, Job, MethodSpec, RunConfig, SweepParameter};
use crate::error::CliError;
use crate::table::{Cell, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    /// Human-readable remarks for stderr.
    pub notes: Vec<String>,
}

impl Report {
    fn new(table: Table) -> Self {
        Report {
            table,
            notes: Vec::new(),
        }
    }
}

pub fn run(job: Job, cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate(job)?;
    match job {
        Job::Variance => run_variance(cfg),
        Job::CriticalRadius => run_critical_radius(cfg),
        Job::Fig3 => run_fig3(cfg),
        Job::PaperTable => run_paper_table(cfg),
        Job::Oracle => run_oracle(cfg),
        Job::Sweep => run_sweep(cfg),
    }
}

fn warning_field(warnings: &[ValidityWarning], n: i32) -> String {
    let mut codes: Vec<&str> = warnings.iter().map(ValidityWarning::code).collect();
    if !is_fitted_exponent(n) {
        codes.push("nonstandard_exponent");
    }
    codes.join(";")
}

fn filter_label(shape: FilterShape) -> &'static str {
    match shape {
        FilterShape::Lorentzian => "lorentzian",
        FilterShape::SharpCutoff => "sharp_cutoff",
    }
}

fn variance_method(cfg: &RunConfig) -> Result<VarianceMethod, CliError> {
    match cfg.method.unwrap_or(MethodSpec::Exact) {
        MethodSpec::Exact => Ok(VarianceMethod::Exact(cfg.quadrature())),
        MethodSpec::Approx => Ok(VarianceMethod::Approx(cfg.n)),
        other => Err(CliError::Config(format!(
            "method {other:?} does not apply to the variance job"
        ))),
    }
}

pub fn run_variance(cfg: &RunConfig) -> Result<Report, CliError> {
    let k = cfg.constants();
    let sphere = cfg.sphere();
    let ifo = cfg.interferometer();
    let bg = cfg.background();
    let method = variance_method(cfg)?;
    let result = phase_variance(&sphere, &ifo, &bg, &k, &method)?;
    let (label, n) = match method {
        VarianceMethod::Exact(_) => ("exact", cfg.n),
        VarianceMethod::Approx(n) => ("approx", n),
    };
    let mut table = Table::new(
        "variance",
        &[
            "radius_m",
            "density_kg_m3",
            "mass_kg",
            "v_m_s",
            "alpha_rad",
            "arm_half_separation_m",
            "tau_s",
            "gamma_tau",
            "omega_c_tau",
            "omega_gw",
            "filter",
            "method",
            "n",
            "delta_phi_sq_rad2",
            "abs_error_rad2",
            "delta_phi_rad",
            "visibility",
            "warnings",
        ],
    );
    table.push(vec![
        sphere.radius.into(),
        sphere.density.into(),
        sphere.mass().into(),
        ifo.velocity.into(),
        ifo.alpha.into(),
        ifo.arm_half_separation.into(),
        ifo.tau().into(),
        ifo.gamma_tau(&k)?.into(),
        (bg.omega_c * ifo.tau()).into(),
        bg.omega_gw.into(),
        filter_label(ifo.filter).into(),
        label.into(),
        i64::from(n).into(),
        result.delta_phi_sq.into(),
        result.abs_error_estimate.unwrap_or(f64::NAN).into(),
        result.delta_phi().into(),
        visibility(&result).into(),
        warning_field(&config_warnings(&ifo, &bg, &k), n).into(),
    ]);
    Ok(Report::new(table))
}

fn critical_request(cfg: &RunConfig) -> CriticalRadiusRequest {
    CriticalRadiusRequest {
        density: cfg.density_kg_m3,
        background: cfg.background(),
        velocity: cfg.v_m_s,
        alpha: cfg.alpha_rad,
        bandwidth: cfg.bandwidth.into(),
        filter: cfg.filter.into(),
        n: cfg.n,
        method: CriticalMethod::ClosedForm,
    }
}

pub fn run_critical_radius(cfg: &RunConfig) -> Result<Report, CliError> {
    let k = cfg.constants();
    let (label, method) = match cfg.method.unwrap_or(MethodSpec::ClosedForm) {
        MethodSpec::ClosedForm | MethodSpec::Approx => ("closed_form", CriticalMethod::ClosedForm),
        MethodSpec::Exact => ("exact", CriticalMethod::ExactRootFind(cfg.quadrature())),
        MethodSpec::ApproxRootFind => ("approx_root_find", CriticalMethod::ApproxRootFind),
    };
    let req = critical_request(cfg).with_method(method);
    let r = critical_radius(&req, &k)?;
    let mut table = Table::new(
        "critical_radius",
        &[
            "density_kg_m3",
            "omega_gw",
            "v_m_s",
            "alpha_rad",
            "bandwidth",
            "gamma_tau",
            "filter",
            "n",
            "method",
            "r_c_m",
            "mass_kg",
            "warnings",
        ],
    );
    table.push(vec![
        req.density.into(),
        req.background.omega_gw.into(),
        req.velocity.into(),
        req.alpha.into(),
        cfg.bandwidth.label().into(),
        req.gamma_tau(&k)?.into(),
        filter_label(req.filter).into(),
        i64::from(req.n).into(),
        label.into(),
        r.into(),
        req.sphere(r).mass().into(),
        warning_field(&validity_warnings(r, &req, &k), req.n).into(),
    ]);
    Ok(Report::new(table))
}

fn fig3_grid(cfg: &RunConfig) -> Vec<f64> {
    let f = &cfg.fig3;
    match &f.gamma_tau_values {
        Some(v) => v.clone(),
        None => log_spaced(f.gamma_tau_min, f.gamma_tau_max, f.points),
    }
}

/// Exact dimensionless integral against the n = 2 approximation on a
/// gamma*tau grid. Grid points where the exact integral diverges
/// (gamma*tau = 0) are skipped with a note.
pub fn run_fig3(cfg: &RunConfig) -> Result<Report, CliError> {
    let settings = cfg.quadrature();
    let cutoff = cfg.fig3.omega_c_tau;
    let grid = fig3_grid(cfg);
    let results: Vec<(f64, Result<f64, Error>)> = grid
        .par_iter()
        .map(|&gt| {
            let e = dimensionless_integral(gt, cutoff, FilterShape::Lorentzian, &settings).map(|e| e.value);
            (gt, e)
        })
        .collect();

    let mut report = Report::new(Table::new(
        "fig3",
        &["gamma_tau", "i_exact", "i_approx_n2", "ratio"],
    ));
    for (gt, exact) in results {
        match exact {
            Ok(e) => {
                let a = approx_integral(gt, 2);
                report.table.push(vec![gt.into(), e.into(), a.into(), (e / a).into()]);
            }
            Err(Error::DivergentIntegral { .. }) => report.notes.push(format!(
                "skipped gamma_tau = {gt}: exact integral diverges (approximation gives {})",
                approx_integral(gt, 2)
            )),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(report)
}

struct Scenario {
    label: &'static str,
    density: f64,
    omega_gw: f64,
    bandwidth: BandwidthModel,
    n: i32,
    filter: FilterShape,
}

fn paper_scenarios() -> Vec<Scenario> {
    let single = |label, omega_gw| Scenario {
        label,
        density: SILICA_DENSITY,
        omega_gw,
        bandwidth: BandwidthModel::FixedGammaTau(1.0),
        n: 2,
        filter: FilterShape::Lorentzian,
    };
    let mut out = vec![
        single("silica_omega_1e-15_single", 1e-15),
        single("silica_omega_1e-19_single", 1e-19),
        Scenario {
            label: "silica_omega_1e-15_cross_n2",
            bandwidth: BandwidthModel::cross_correlated(),
            ..single("", 1e-15)
        },
        Scenario {
            label: "silica_omega_1e-15_cross_n4",
            bandwidth: BandwidthModel::cross_correlated(),
            n: 4,
            filter: FilterShape::SharpCutoff,
            ..single("", 1e-15)
        },
        Scenario {
            label: "silica_omega_1e-15_single_resolved",
            bandwidth: BandwidthModel::SingleInterferometer,
            ..single("", 1e-15)
        },
    ];
    for (label, density) in [
        ("neutron_star_rho_1e15", 1e15),
        ("neutron_star_rho_1e16", 1e16),
        ("neutron_star_rho_1e17", 1e17),
        ("neutron_star_rho_1e18", 1e18),
    ] {
        out.push(Scenario {
            label,
            density,
            ..single("", 1e-15)
        });
    }
    out
}

/// The reference scenarios at v = 1 m/s: silica single-device radii, the
/// cross-correlated radii, the resolved single-device bandwidth, and a
/// neutron-star density scan.
pub fn run_paper_table(cfg: &RunConfig) -> Result<Report, CliError> {
    let k = cfg.constants();
    let settings = cfg.quadrature();
    let mut table = Table::new(
        "paper_table",
        &[
            "scenario",
            "density_kg_m3",
            "omega_gw",
            "v_m_s",
            "gamma_tau",
            "n",
            "filter",
            "r_c_closed_m",
            "r_c_exact_m",
            "mass_closed_kg",
            "mass_exact_kg",
            "cross_multiplier",
            "warnings",
        ],
    );
    let rows: Vec<Result<Vec<Cell>, CliError>> = paper_scenarios()
        .par_iter()
        .map(|s| {
            let req = CriticalRadiusRequest {
                density: s.density,
                background: GWBackground::new(s.omega_gw),
                velocity: 1.0,
                alpha: PI / 4.0,
                bandwidth: s.bandwidth,
                filter: s.filter,
                n: s.n,
                method: CriticalMethod::ClosedForm,
            };
            let closed = critical_radius_closed(&req, &k)?;
            let exact = critical_radius_solve(&req.with_method(CriticalMethod::ExactRootFind(settings)), &k)?;
            let multiplier = match s.bandwidth {
                BandwidthModel::CrossCorrelated { fraction } => {
                    cross_correlation_multiplier_with_fraction(req.velocity, s.n, &k, fraction)
                }
                _ => 1.0,
            };
            let mut warnings = validity_warnings(closed, &req, &k);
            for w in validity_warnings(exact, &req, &k) {
                if !warnings.contains(&w) {
                    warnings.push(w);
                }
            }
            Ok(vec![
                s.label.into(),
                s.density.into(),
                s.omega_gw.into(),
                req.velocity.into(),
                req.gamma_tau(&k)?.into(),
                i64::from(s.n).into(),
                filter_label(s.filter).into(),
                closed.into(),
                exact.into(),
                req.sphere(closed).mass().into(),
                req.sphere(exact).mass().into(),
                multiplier.into(),
                warning_field(&warnings, s.n).into(),
            ])
        })
        .collect();
    for row in rows {
        table.push(row?);
    }
    Ok(Report::new(table))
}

/// Monte-Carlo and time-domain cross-checks for the configured setup.
pub fn run_oracle(cfg: &RunConfig) -> Result<Report, CliError> {
    let k = cfg.constants();
    let sphere = cfg.sphere();
    let ifo = cfg.interferometer();
    let bg = cfg.background();
    let o = cfg.oracle;
    ifo.validate()?;
    if o.modes < 2 || !(o.x_min > 0.0) || !(o.x_max > o.x_min) {
        return Err(CliError::Config("oracle needs >= 2 modes and 0 < x_min < x_max".into()));
    }
    let tau = ifo.tau();
    let hi = (o.x_max / tau).min(bg.omega_c);
    let lo = o.x_min / tau;
    if !(hi > lo) {
        return Err(CliError::Config("band cut-off lies below the oracle's lowest mode".into()));
    }
    let grid = log_spaced(lo, hi, o.modes);

    let mut worst: f64 = 0.0;
    for &w in &grid {
        if (0.5 * w * tau).sin().powi(2) < 1e-8 {
            continue;
        }
        let a = response_a(w, sphere.mass(), ifo.velocity, tau, ifo.alpha, &k)?;
        let t = transfer_amplitude(w, &sphere, &ifo, &k);
        worst = worst.max((t / a.sqrt() - 1.0).abs());
    }

    let ens = ModeEnsemble::for_background(grid, &bg, &k, cfg.seed, o.realizations)?;
    let mc = mc_phase_variance(&ens, &sphere, &ifo, &bg, &k)?;
    let exact = phase_variance(&sphere, &ifo, &bg, &k, &VarianceMethod::Exact(cfg.quadrature()))?;
    let z = if mc.stderr > 0.0 {
        (mc.variance - exact.delta_phi_sq) / mc.stderr
    } else {
        0.0
    };

    let mut table = Table::new(
        "oracle",
        &[
            "seed",
            "modes",
            "realizations",
            "mc_mean_rad",
            "mc_variance_rad2",
            "mc_stderr_rad2",
            "exact_delta_phi_sq_rad2",
            "z_score",
            "transfer_max_rel_dev",
        ],
    );
    table.push(vec![
        Cell::Text(cfg.seed.to_string()),
        (o.modes as i64).into(),
        (o.realizations as i64).into(),
        mc.mean.into(),
        mc.variance.into(),
        mc.stderr.into(),
        exact.delta_phi_sq.into(),
        z.into(),
        worst.into(),
    ]);
    Ok(Report::new(table))
}

fn apply_sweep_value(cfg: &RunConfig, parameter: SweepParameter, value: f64) -> RunConfig {
    let mut c = cfg.clone();
    match parameter {
        SweepParameter::RadiusM => c.radius_m = value,
        SweepParameter::DensityKgM3 => c.density_kg_m3 = value,
        SweepParameter::VMS => c.v_m_s = value,
        SweepParameter::AlphaRad => c.alpha_rad = value,
        SweepParameter::OmegaGw => c.omega_gw = value,
        SweepParameter::OmegaCRadS => c.omega_c_rad_s = value,
        SweepParameter::GammaTau => c.bandwidth = BandwidthSpec::FixedGammaTau { gamma_tau: value },
    }
    c
}

/// Phase variance (exact and approximate), visibility and closed-form
/// critical radius along one parameter axis. Points are evaluated in
/// parallel and emitted in grid order.
pub fn run_sweep(cfg: &RunConfig) -> Result<Report, CliError> {
    let sweep = cfg.sweep.expect("validated");
    let k = cfg.constants();
    let settings = cfg.quadrature();
    let rows: Vec<Result<Vec<Cell>, CliError>> = sweep
        .grid()
        .par_iter()
        .map(|&value| {
            let c = apply_sweep_value(cfg, sweep.parameter, value);
            let sphere = c.sphere();
            let ifo = c.interferometer();
            let bg = c.background();
            let exact = phase_variance(&sphere, &ifo, &bg, &k, &VarianceMethod::Exact(settings))?;
            let approx = phase_variance(&sphere, &ifo, &bg, &k, &VarianceMethod::Approx(c.n))?;
            let r_c = match critical_radius_closed(&critical_request(&c), &k) {
                Ok(r) => r,
                Err(Error::NoDecoherence) => f64::INFINITY,
                Err(e) => return Err(e.into()),
            };
            Ok(vec![
                value.into(),
                ifo.tau().into(),
                ifo.gamma_tau(&k)?.into(),
                exact.delta_phi_sq.into(),
                approx.delta_phi_sq.into(),
                visibility(&exact).into(),
                r_c.into(),
                warning_field(&config_warnings(&ifo, &bg, &k), c.n).into(),
            ])
        })
        .collect();
    let mut table = Table::new(
        "sweep",
        &[
            sweep.parameter.key(),
            "tau_s",
            "gamma_tau",
            "delta_phi_sq_exact_rad2",
            "delta_phi_sq_approx_rad2",
            "visibility_exact",
            "r_c_closed_m",
            "warnings",
        ],
    );
    for row in rows {
        table.push(row?);
    }
    Ok(Report::new(table))
}

