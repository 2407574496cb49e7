//! Command-line front end: gait inspection, coefficient tables, trajectory
//! scoring, indicator verification, toy training and rollouts.

mod args;
mod commands;

pub use args::{
    Cli, Command, GaitArgs, PlotArgs, RolloutArgs, ScoreArgs, ShowArgs, TrainArgs, VerifyArgs,
};
pub use commands::{
    plot_coeffs_table, resolve_gait, verify_report, VerifyCase, VerifyReport, VERIFY_MIN_SAMPLES,
    VERIFY_TOLERANCE,
};

use std::fmt;
use std::io::Write;

/// Failure of one invocation, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable input formats or an invalid gait. Exit code 2.
    Usage(String),
    /// Everything else. Exit code 1.
    Runtime(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Runtime(e) => write!(f, "{e:#}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Runs one parsed command, writing human-readable output to `out`.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<(), CliError> {
    match cli.command {
        Command::Show(a) => commands::show(a, out),
        Command::PlotCoeffs(a) => commands::plot_coeffs(a, out),
        Command::Score(a) => commands::score(a, out),
        Command::Verify(a) => commands::verify(a, out),
        Command::Train(a) => commands::train(a, out),
        Command::Rollout(a) => commands::rollout(a, out),
    }
}
