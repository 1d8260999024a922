//! Library surface of the `sagin` command-line tool.
//!
//! The binary in `main.rs` is a thin argument-parsing shell; everything it
//! does is reachable through these modules so that the behavior is testable
//! without spawning processes:
//!
//! * [`scenario`] - the TOML scenario format, its validation, and the
//!   conversions into the core model types.
//! * [`commands`] - the geometry/doppler/perf/fading computations behind the
//!   subcommands, each producing a [`commands::Table`] rendered as CSV.
//! * [`validate`] - the self-validation suite: Monte-Carlo against closed
//!   forms, quadrature convergence, algebraic identities, and coefficient
//!   sanity, reported one named check per row.

// Validation guards are written `!(x > 0.0)` so that NaN fails them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod scenario;
pub mod validate;

use sagin_channel::ChannelError;

/// Process-level error with its exit code.
///
/// Exit codes: 0 success, 1 validation failure, 2 configuration error,
/// 3 numerical-domain error.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ChannelError> for CliError {
    fn from(err: ChannelError) -> Self {
        match err {
            ChannelError::InvalidArgument(m) => CliError::Config(m),
            ChannelError::Domain(m) | ChannelError::NonConvergence(m) => CliError::Numerical(m),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
