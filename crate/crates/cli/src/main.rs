//! `sagin`: scenario-driven analyses of the space-air-ground channel model.
//!
//! Subcommands: `geometry`, `doppler`, `perf`, `fading` (each emitting CSV)
//! and `validate` (the self-validation suite). Exit codes: 0 success,
//! 1 validation failure, 2 configuration error, 3 numerical-domain error.

use clap::{Parser, Subcommand, ValueEnum};
use sagin_cli::commands::{
    cmd_doppler, cmd_fading, cmd_geometry, cmd_perf, SweepSpec, SweepVariable, Table,
};
use sagin_cli::scenario::Scenario;
use sagin_cli::validate::run_validation;
use sagin_cli::{CliError, CliResult};
use sagin_channel::montecarlo::McConfig;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "sagin",
    about = "Space-air-ground channel model: geometry, Doppler, link performance, fading, validation",
    version
)]
struct Cli {
    /// Scenario file (TOML); the embedded baseline when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write CSV output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the effective scenario as TOML and exit.
    #[arg(long, global = true)]
    dump_config: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Refracted-ray geometry: path lengths, ground range, true elevation.
    Geometry {
        /// Detected-elevation sweep `start:stop:points[:scale]` in degrees.
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Normalized Doppler profile of the configured pass.
    Doppler {
        #[arg(long, default_value_t = -300.0, allow_hyphen_values = true)]
        t_start: f64,
        #[arg(long, default_value_t = 300.0, allow_hyphen_values = true)]
        t_end: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
    },
    /// Outage, ergodic rate, BER bound, and Goodput over an SNR/power grid.
    Perf {
        /// Sweep `start:stop:points[:scale]`; default `0:40:9` in dB.
        #[arg(long)]
        sweep: Option<String>,
        /// What the sweep varies.
        #[arg(long, value_enum, default_value_t = SweepOver::Lambda)]
        over: SweepOver,
        /// Add Monte-Carlo reference columns.
        #[arg(long)]
        mc: bool,
        /// Monte-Carlo trials (defaults to the scenario's analysis block).
        #[arg(long)]
        trials: Option<u64>,
        /// Monte-Carlo master seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Density and distribution of the fading power gain.
    Fading {
        #[arg(long, default_value_t = 81)]
        points: u32,
        #[arg(long)]
        x_max: Option<f64>,
    },
    /// Run the self-validation suite; exits 0 only if every check passes.
    Validate {
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepOver {
    /// Mean-SNR scale lambda_t.
    Lambda,
    /// Transmit power in dBm, through the link budget.
    Power,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("sagin: {err}");
            err.exit_code()
        }
    });
}

fn run(cli: Cli) -> CliResult<i32> {
    let scenario = match &cli.config {
        Some(path) => Scenario::load(path)?,
        None => Scenario::baseline(),
    };

    if cli.dump_config {
        print!("{}", scenario.dump());
        return Ok(0);
    }

    let table = match &cli.command {
        Command::Geometry { sweep } => {
            let sweep = parse_sweep(sweep)?;
            Some(cmd_geometry(&scenario, sweep)?)
        }
        Command::Doppler {
            t_start,
            t_end,
            step,
        } => Some(cmd_doppler(&scenario, *t_start, *t_end, *step)?),
        Command::Perf {
            sweep,
            over,
            mc,
            trials,
            seed,
        } => {
            let sweep = parse_sweep(sweep)?;
            let over = match over {
                SweepOver::Lambda => SweepVariable::LambdaT,
                SweepOver::Power => SweepVariable::TransmitPower,
            };
            let mc_cfg = if *mc {
                let base = scenario.mc_config()?;
                Some(McConfig::new(
                    trials.unwrap_or(base.trials),
                    seed.unwrap_or(base.master_seed),
                    base.stream_count,
                )?)
            } else {
                None
            };
            Some(cmd_perf(&scenario, sweep, over, mc_cfg)?)
        }
        Command::Fading { points, x_max } => Some(cmd_fading(&scenario, *points, *x_max)?),
        Command::Validate { trials, seed } => {
            let report = run_validation(&scenario, *trials, *seed)?;
            let rendered = report.render();
            write_output(cli.out.as_deref(), &rendered)?;
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
    };

    if let Some(table) = table {
        write_table(cli.out.as_deref(), &table)?;
    }
    Ok(0)
}

fn parse_sweep(sweep: &Option<String>) -> CliResult<Option<SweepSpec>> {
    sweep.as_deref().map(SweepSpec::parse).transpose()
}

fn write_table(out: Option<&std::path::Path>, table: &Table) -> CliResult<()> {
    write_output(out, &table.to_csv_string())
}

fn write_output(out: Option<&std::path::Path>, content: &str) -> CliResult<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display()))),
    }
}
