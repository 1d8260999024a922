//! The computations behind the subcommands. Each returns a [`Table`] whose
//! CSV rendering is deterministic: fixed column order, rows in index order,
//! `.` decimal separator, and shortest-round-trip float formatting
//! (scientific notation outside [1e-4, 1e7)).

use crate::scenario::{DistanceModel, Scenario};
use crate::{CliError, CliResult};
use sagin_channel::attenuation::{
    clouds_factor, compose_link_budget, molecular_absorption, path_loss,
    fog_factor, rain_factor,
};
use sagin_channel::montecarlo::{estimate_ergodic_rate, estimate_outage, McConfig};
use sagin_channel::performance::{
    ber_upper_bound, ergodic_rate, goodput_lower_bound, outage_probability, PerformanceInputs,
};
use sagin_channel::refraction::{
    bending_length_simple, flat_earth_slant, ray_path,
};

/// A rectangular numeric result with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Render as CSV with a header row.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }

    /// Column index by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// Shortest-round-trip formatting with `.` decimals; scientific notation for
/// magnitudes outside [1e-4, 1e7).
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let mag = v.abs();
    if (1e-4..1e7).contains(&mag) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Axis scale of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepScale {
    /// Values are taken as-is.
    Linear,
    /// Values are decibels; consumers convert where linear quantities are
    /// needed.
    #[default]
    Db,
}

/// A sweep grid `start:stop:points[:scale]`, scale `linear` or `db`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub start: f64,
    pub stop: f64,
    pub points: u32,
    pub scale: SweepScale,
}

impl SweepSpec {
    pub fn parse(text: &str) -> CliResult<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(CliError::Config(format!(
                "sweep `{text}`: expected start:stop:points[:scale]"
            )));
        }
        let num = |s: &str, what: &str| -> CliResult<f64> {
            s.parse()
                .map_err(|_| CliError::Config(format!("sweep `{text}`: bad {what} `{s}`")))
        };
        let start = num(parts[0], "start")?;
        let stop = num(parts[1], "stop")?;
        let points: u32 = parts[2]
            .parse()
            .map_err(|_| CliError::Config(format!("sweep `{text}`: bad point count")))?;
        if points < 1 {
            return Err(CliError::Config(format!(
                "sweep `{text}`: needs at least one point"
            )));
        }
        if points > 1 && stop <= start {
            return Err(CliError::Config(format!(
                "sweep `{text}`: stop must exceed start"
            )));
        }
        let scale = match parts.get(3).copied() {
            None => SweepScale::default(),
            Some("db") => SweepScale::Db,
            Some("linear") => SweepScale::Linear,
            Some(other) => {
                return Err(CliError::Config(format!(
                    "sweep `{text}`: unknown scale `{other}` (use linear or db)"
                )))
            }
        };
        Ok(Self {
            start,
            stop,
            points,
            scale,
        })
    }

    /// The grid values on the sweep's own axis, ascending.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| self.start + i as f64 * step)
            .collect()
    }
}

/// The resolved link budget at one scenario operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudgetBreakdown {
    /// Distance feeding the path loss, km (per the configured model).
    pub distance_km: f64,
    pub true_elevation_rad: f64,
    pub path_loss: f64,
    pub absorption: f64,
    pub rain: f64,
    pub fog: f64,
    pub clouds: f64,
    /// Composite mean-SNR scale.
    pub lambda_t: f64,
}

/// Solve the scenario's link budget at its configured elevation.
pub fn link_budget(scenario: &Scenario) -> CliResult<LinkBudgetBreakdown> {
    let geom = scenario.geometry_scenario()?;
    let profile = scenario.refraction_profile()?;
    let path = ray_path(&profile, &geom)?;
    let distance_km = match scenario.carrier.distance_model {
        DistanceModel::Bending => path.bending_length_km,
        DistanceModel::Straight => path.straight_length_km,
        DistanceModel::Flat => flat_earth_slant(&geom),
    };
    let carrier = scenario.carrier_spec()?;
    let pl = path_loss(&carrier, distance_km * 1e3)?;
    let absorption = molecular_absorption(&scenario.absorption_spec())?;
    let table = scenario.coefficient_table()?;
    let weather = scenario.weather_conditions(&table)?;
    let rain = rain_factor(&weather.rain);
    let fog = fog_factor(&weather.fog);
    let clouds = clouds_factor(&weather.clouds, path.true_elevation_rad)?;
    let lambda_t = compose_link_budget(
        scenario.transmit_w(),
        scenario.noise_w()?,
        pl,
        absorption,
        rain,
        fog,
        clouds,
    )?;
    Ok(LinkBudgetBreakdown {
        distance_km,
        true_elevation_rad: path.true_elevation_rad,
        path_loss: pl,
        absorption,
        rain,
        fog,
        clouds,
        lambda_t,
    })
}

/// `geometry`: ray-path solutions, one row per detected elevation.
///
/// Columns: theta0_deg, d_rf_simple_km, d_rf_accurate_km, ground_range_km,
/// d_st_km, d_dif_km, theta_e_deg, flat_km.
pub fn cmd_geometry(scenario: &Scenario, sweep: Option<SweepSpec>) -> CliResult<Table> {
    let profile = scenario.refraction_profile()?;
    let mut table = Table::new(&[
        "theta0_deg",
        "d_rf_simple_km",
        "d_rf_accurate_km",
        "ground_range_km",
        "d_st_km",
        "d_dif_km",
        "theta_e_deg",
        "flat_km",
    ]);
    let angles = match sweep {
        Some(spec) => spec.values(),
        None => vec![scenario.geometry.detected_elevation_deg],
    };
    for theta0_deg in angles {
        let geom = scenario.geometry_at(theta0_deg)?;
        let simple = bending_length_simple(&profile, &geom)?;
        let path = ray_path(&profile, &geom)?;
        table.rows.push(vec![
            theta0_deg,
            simple,
            path.bending_length_km,
            path.ground_range_km,
            path.straight_length_km,
            path.excess_km,
            path.true_elevation_rad.to_degrees(),
            flat_earth_slant(&geom),
        ]);
    }
    Ok(table)
}

/// `doppler`: the normalized Doppler profile of the configured pass.
///
/// Columns: t_s, psi_rad, doppler_ratio, doppler_hz_at_fc.
pub fn cmd_doppler(
    scenario: &Scenario,
    t_start: f64,
    t_end: f64,
    step: f64,
) -> CliResult<Table> {
    let earth = scenario.earth_model()?;
    let sat = scenario.satellite()?;
    let pass = scenario.pass_geometry()?;
    let f_c = scenario.carrier.frequency_ghz * 1e9;
    let rows = sagin_channel::kinematics::doppler_series(
        &earth, &sat, &pass, t_start, t_end, step,
    )?;
    let mut table = Table::new(&["t_s", "psi_rad", "doppler_ratio", "doppler_hz_at_fc"]);
    for (t, ratio) in rows {
        let psi = pass.relative_angular_velocity_rad_s * (t - pass.epoch_s);
        table.rows.push(vec![t, psi, ratio, ratio * f_c]);
    }
    Ok(table)
}

/// What the `perf` sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepVariable {
    /// Sweep the mean-SNR scale lambda_t directly (dB or linear per the
    /// sweep scale).
    #[default]
    LambdaT,
    /// Sweep the transmit power in dBm and derive lambda_t through the link
    /// budget.
    TransmitPower,
}

/// `perf`: the closed-form performance chain over an SNR or power grid,
/// optionally with Monte-Carlo reference columns.
///
/// Columns: x, lambda_t, p_out, r_er, ber_bound, r_gp
/// [, mc_p_out, mc_p_out_se, mc_r_er, mc_r_er_se].
pub fn cmd_perf(
    scenario: &Scenario,
    sweep: Option<SweepSpec>,
    over: SweepVariable,
    mc: Option<McConfig>,
) -> CliResult<Table> {
    let fading = scenario.fading_params()?;
    let gamma_th = scenario.analysis.outage_threshold;
    let qam = scenario.analysis.qam_order;

    let spec = sweep.unwrap_or(SweepSpec {
        start: 0.0,
        stop: 40.0,
        points: 9,
        scale: SweepScale::Db,
    });

    // (x, lambda_t) per row
    let grid: Vec<(f64, f64)> = match over {
        SweepVariable::LambdaT => spec
            .values()
            .into_iter()
            .map(|x| {
                let lambda = match spec.scale {
                    SweepScale::Db => 10.0_f64.powf(x / 10.0),
                    SweepScale::Linear => x,
                };
                (x, lambda)
            })
            .collect(),
        SweepVariable::TransmitPower => {
            // lambda scales linearly in transmit power; solve the budget
            // once and rescale
            let budget = link_budget(scenario)?;
            let base_power = scenario.transmit_w();
            spec.values()
                .into_iter()
                .map(|dbm| {
                    let p = sagin_channel::attenuation::dbm_to_watts(dbm);
                    (dbm, budget.lambda_t * p / base_power)
                })
                .collect()
        }
    };

    let mut columns = vec!["x", "lambda_t", "p_out", "r_er", "ber_bound", "r_gp"];
    if mc.is_some() {
        columns.extend_from_slice(&["mc_p_out", "mc_p_out_se", "mc_r_er", "mc_r_er_se"]);
    }
    let mut table = Table::new(&columns);

    for (x, lambda) in grid {
        if !(lambda > 0.0) {
            return Err(CliError::Config(format!(
                "perf sweep produced non-positive lambda_t at x = {x}"
            )));
        }
        let inputs = PerformanceInputs::new(lambda, fading, qam, gamma_th)?;
        let mut row = vec![
            x,
            lambda,
            outage_probability(&inputs),
            ergodic_rate(&inputs)?,
            ber_upper_bound(&inputs)?.value,
            goodput_lower_bound(&inputs)?.value,
        ];
        if let Some(cfg) = &mc {
            let op = estimate_outage(&fading, lambda, gamma_th, cfg)?;
            let er = estimate_ergodic_rate(&fading, lambda, cfg)?;
            row.extend_from_slice(&[op.mean, op.std_error, er.mean, er.std_error]);
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// `fading`: density and distribution of the power gain on a uniform grid.
///
/// Columns: x, pdf, cdf.
pub fn cmd_fading(scenario: &Scenario, points: u32, x_max: Option<f64>) -> CliResult<Table> {
    if points < 2 {
        return Err(CliError::Config("fading table needs at least 2 points".into()));
    }
    let params = scenario.fading_params()?;
    let hi = match x_max {
        Some(v) if v > 0.0 => v,
        Some(v) => {
            return Err(CliError::Config(format!(
                "fading x_max must be positive, got {v}"
            )))
        }
        None => 4.0 * params.mean_power(),
    };
    let mut table = Table::new(&["x", "pdf", "cdf"]);
    for i in 0..points {
        let x = hi * i as f64 / (points - 1) as f64;
        table
            .rows
            .push(vec![x, params.pdf_power(x)?, params.cdf_power(x)?]);
    }
    Ok(table)
}
