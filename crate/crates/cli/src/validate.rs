//! The self-validation suite behind `sagin validate`: every closed form is
//! exercised against an independent route (Monte-Carlo, numerical
//! integration, algebraic identity, pure geometry, or finite differences) on
//! the loaded scenario, one named check per row.
//!
//! Individual check failures are reported, not thrown; the caller turns
//! "any failed" into exit code 1.

use crate::commands::link_budget;
use crate::scenario::Scenario;
use crate::CliResult;
use sagin_channel::attenuation::compose_link_budget;
use sagin_channel::fading::ShadowedRicianParams;
use sagin_channel::integrate::adaptive_simpson;
use sagin_channel::kinematics::{normalized_doppler, slant_range_km};
use sagin_channel::montecarlo::{
    estimate_ergodic_rate, estimate_mean_power, estimate_outage, McConfig,
};
use sagin_channel::performance::{ergodic_rate, outage_probability, PerformanceInputs};
use sagin_channel::refraction::{bending_length_accurate, ground_range};
use sagin_channel::specfun::binomial;
use sagin_channel::SPEED_OF_LIGHT_KM_S;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub expected: f64,
    pub got: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn within(name: &'static str, expected: f64, got: f64, tolerance: f64) -> Self {
        Self {
            name,
            expected,
            got,
            tolerance,
            passed: (got - expected).abs() <= tolerance,
        }
    }
}

/// The full report.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Machine-readable rendering: header plus one CSV row per check and a
    /// trailing summary line.
    pub fn render(&self) -> String {
        let mut out = String::from("check,expected,got,tolerance,status\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                c.name,
                crate::commands::format_float(c.expected),
                crate::commands::format_float(c.got),
                crate::commands::format_float(c.tolerance),
                if c.passed { "pass" } else { "FAIL" }
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "# {} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        out
    }
}

/// Run the suite. `trials`/`seed` override the scenario's analysis block.
pub fn run_validation(
    scenario: &Scenario,
    trials: Option<u64>,
    seed: Option<u64>,
) -> CliResult<ValidationReport> {
    let fading = scenario.fading_params()?;
    let mut cfg = scenario.mc_config()?;
    if let Some(t) = trials {
        cfg = McConfig::new(t, cfg.master_seed, cfg.stream_count)?;
    }
    if let Some(s) = seed {
        cfg = McConfig::new(cfg.trials, s, cfg.stream_count)?;
    }
    let budget = link_budget(scenario)?;
    let lambda = budget.lambda_t;
    let gamma_th = scenario.analysis.outage_threshold;
    let inputs = PerformanceInputs::new(lambda, fading, scenario.analysis.qam_order, gamma_th)?;

    let mut checks = Vec::new();

    // mixture weights of the fading CDF sum to one for every m
    let mut worst = 0.0_f64;
    for m in 1..=20u32 {
        let p = ShadowedRicianParams::new(fading.half_scatter_power, fading.los_power, m)?;
        let total: f64 = (0..m).map(|k| binomial(m - 1, k) * p.mixture_weight(k)).sum();
        worst = worst.max((total - 1.0).abs());
    }
    checks.push(CheckResult::within("fading_weight_identity", 0.0, worst, 1e-12));

    // first-moment binomial collapse
    let mut worst = 0.0_f64;
    for m in 1..=20u32 {
        let z = fading.los_power / (2.0 * m as f64 * fading.half_scatter_power);
        let lhs: f64 = (0..m)
            .map(|k| binomial(m - 1, k) * z.powi(k as i32) * (k + 1) as f64)
            .sum();
        let rhs = (1.0 + z).powi(m as i32 - 1)
            + (m as f64 - 1.0) * z * (1.0 + z).powi(m as i32 - 2);
        worst = worst.max((lhs - rhs).abs() / rhs.abs());
    }
    checks.push(CheckResult::within("fading_moment_identity", 0.0, worst, 1e-12));

    // distribution function equals the integral of the density
    let mut worst = 0.0_f64;
    for frac in [0.2, 1.0, 3.0] {
        let x = frac * fading.mean_power();
        let integral = adaptive_simpson(|t| fading.pdf_power(t).unwrap_or(0.0), 0.0, x, 1e-11)?;
        worst = worst.max((fading.cdf_power(x)? - integral).abs());
    }
    checks.push(CheckResult::within("fading_cdf_pdf_consistency", 0.0, worst, 1e-9));

    // (b0, Omega) and (K_LoS, K_Sct) parameterizations agree on the
    // unit-mean channel
    let normalized = ShadowedRicianParams::normalized(fading.rician_k(), fading.nakagami_m)?;
    let mut worst = 0.0_f64;
    for x in [0.05, 0.3, 1.0, 2.5, 6.0] {
        worst = worst
            .max((normalized.cdf_power(x)? - normalized.cdf_power_k_form(x)?).abs());
    }
    checks.push(CheckResult::within(
        "fading_parameterization_consistency",
        0.0,
        worst,
        1e-12,
    ));

    // Monte-Carlo versus the closed forms at the scenario operating point
    let mp = estimate_mean_power(&fading, &cfg)?;
    checks.push(CheckResult::within(
        "mc_mean_power",
        fading.mean_power(),
        mp.mean,
        cfg.confidence_sigma * mp.std_error,
    ));

    let op_closed = outage_probability(&inputs);
    let op = estimate_outage(&fading, lambda, gamma_th, &cfg)?;
    let op_sigma = op
        .std_error
        .max((op_closed * (1.0 - op_closed) / cfg.trials as f64).sqrt());
    checks.push(CheckResult::within(
        "mc_outage_vs_closed_form",
        op_closed,
        op.mean,
        cfg.confidence_sigma * op_sigma,
    ));

    let er_closed = ergodic_rate(&inputs)?;
    let er = estimate_ergodic_rate(&fading, lambda, &cfg)?;
    checks.push(CheckResult::within(
        "mc_ergodic_rate_vs_closed_form",
        er_closed,
        er.mean,
        cfg.confidence_sigma * er.std_error,
    ));

    // ergodic rate closed form versus integrating the survival function
    let s = fading.k_los() + fading.k_sct();
    let cut = 60.0 * lambda * s;
    let survival = |x: f64| {
        1.0 - sagin_channel::fading::cdf_from_k_factors(
            fading.nakagami_m,
            fading.k_los(),
            fading.k_sct(),
            x / lambda,
        )
    };
    let integral =
        adaptive_simpson(|x| survival(x) / (1.0 + x), 0.0, cut, 1e-10)? / std::f64::consts::LN_2;
    checks.push(CheckResult::within(
        "er_closed_form_vs_integral",
        0.0,
        (er_closed - integral).abs() / integral,
        1e-6,
    ));

    // quadrature convergence: doubling the order must not move the ray
    // integrals
    let geom = scenario.geometry_scenario()?;
    let profile = scenario.refraction_profile()?;
    let profile2 = profile.with_order(profile.quadrature_order * 2)?;
    let d1 = bending_length_accurate(&profile, &geom)?;
    let d2 = bending_length_accurate(&profile2, &geom)?;
    checks.push(CheckResult::within(
        "quadrature_convergence_bending",
        0.0,
        (d1 - d2).abs() / d2,
        1e-8,
    ));
    let g1 = ground_range(&profile, &geom)?;
    let g2 = ground_range(&profile2, &geom)?;
    checks.push(CheckResult::within(
        "quadrature_convergence_ground",
        0.0,
        (g1 - g2).abs() / g2.max(1e-9),
        1e-8,
    ));

    // no atmosphere: the bending model reproduces pure geometry
    let vacuum = sagin_channel::refraction::RefractionProfile::general(
        0.0,
        profile.decay_rate_per_km,
        profile.quadrature_order,
    )?;
    let d_vac = bending_length_accurate(&vacuum, &geom)?;
    let r = geom.radius_km();
    let hos = geom.orbit_radius_km();
    let theta0 = geom.detected_elevation_rad;
    let phi = (r * theta0.cos() / hos).acos() - theta0;
    let chord = (r * r + hos * hos - 2.0 * r * hos * phi.cos()).sqrt();
    checks.push(CheckResult::within(
        "refraction_vacuum_consistency",
        chord,
        d_vac,
        2e-6,
    ));

    // Doppler: antisymmetry about the epoch and the finite-difference
    // slant-range oracle
    let earth = scenario.earth_model()?;
    let sat = scenario.satellite()?;
    let pass = scenario.pass_geometry()?;
    let mut worst_sym = 0.0_f64;
    let mut worst_fd = 0.0_f64;
    let h = 1e-3;
    for delta in [1.0, 10.0, 60.0, 150.0, 300.0] {
        let fwd = normalized_doppler(&earth, &sat, &pass, pass.epoch_s + delta);
        let back = normalized_doppler(&earth, &sat, &pass, pass.epoch_s - delta);
        worst_sym = worst_sym.max((fwd + back).abs());
        let t = pass.epoch_s + delta;
        let fd = -(slant_range_km(&earth, &sat, &pass, t + h)
            - slant_range_km(&earth, &sat, &pass, t - h))
            / (2.0 * h)
            / SPEED_OF_LIGHT_KM_S;
        worst_fd = worst_fd.max((fwd - fd).abs() / fd.abs());
    }
    checks.push(CheckResult::within("doppler_antisymmetry", 0.0, worst_sym, 1e-15));
    checks.push(CheckResult::within("doppler_fd_oracle", 0.0, worst_fd, 1e-6));

    // coefficient sanity: the rain model at a 25 mm/h probe must stay in a
    // physical range at the carrier frequency
    let table = scenario.coefficient_table()?;
    let probe_gamma = match table.lookup(scenario.carrier.frequency_ghz) {
        Ok(row) => row.k_r * 25.0_f64.powf(row.alpha_r),
        // outside the table span nothing consumes the coefficients
        Err(_) => 0.0,
    };
    checks.push(CheckResult {
        name: "rain_gamma_range",
        expected: 0.0,
        got: probe_gamma,
        tolerance: 50.0,
        passed: (0.0..=50.0).contains(&probe_gamma),
    });

    // link budget composition is invariant to factor ordering
    let reference = lambda;
    let permuted = compose_link_budget(
        scenario.transmit_w(),
        scenario.noise_w()?,
        budget.clouds,
        budget.rain,
        budget.path_loss,
        budget.fog,
        budget.absorption,
    )?;
    checks.push(CheckResult::within(
        "link_budget_order_invariance",
        reference,
        permuted,
        0.0,
    ));

    Ok(ValidationReport { checks })
}
