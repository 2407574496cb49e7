use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use phasegait::reward::{RewardMode, DEFAULT_GAMMA};

#[derive(Debug, Parser)]
#[command(name = "phasegait", version, about = "Periodic gait reward specification toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a validated gait specification.
    Show(ShowArgs),
    /// Tabulate expected force and speed coefficients over one cycle.
    PlotCoeffs(PlotArgs),
    /// Score a recorded trajectory against a gait.
    Score(ScoreArgs),
    /// Compare the analytic phase indicator with Monte Carlo estimates.
    Verify(VerifyArgs),
    /// Search for a toy-biped policy that maximizes a gait's reward.
    Train(TrainArgs),
    /// Roll a policy out in the toy biped and record the trajectory.
    Rollout(RolloutArgs),
}

/// Gait selection shared by every gait-aware subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct GaitArgs {
    /// Library gait: stand, walk, run, hop, gallop or skip.
    #[arg(long, conflicts_with = "spec")]
    pub gait: Option<String>,
    /// TOML gait spec file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Control steps per cycle.
    #[arg(long)]
    pub period: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_left: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_right: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ShowArgs {
    /// Library gait name, same as --gait.
    #[arg(conflicts_with_all = ["gait", "spec"])]
    pub name: Option<String>,
    #[command(flatten)]
    pub gait: GaitArgs,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub gait: GaitArgs,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    /// Output file. Standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// JSON-lines trajectory.
    pub input: PathBuf,
    #[command(flatten)]
    pub gait: GaitArgs,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: f64,
    /// single or multi.
    #[arg(long, default_value = "single")]
    pub mode: RewardMode,
    /// Per-step breakdown table.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [8.0, 16.0, 64.0])]
    pub kappa: Vec<f64>,
    /// Cycle-time points per interval.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Per-case error table.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub gait: GaitArgs,
    #[arg(long, default_value_t = 200)]
    pub generations: usize,
    #[arg(long, default_value_t = 240)]
    pub horizon: usize,
    #[arg(long, default_value_t = 32)]
    pub population: usize,
    #[arg(long, default_value_t = 8)]
    pub parents: usize,
    #[arg(long, default_value_t = 0.1)]
    pub sigma: f64,
    #[arg(long, default_value_t = 4)]
    pub episodes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: f64,
    /// Commanded forward speed, m/s.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub speed: f64,
    /// Output directory for policy.txt, history.csv, grf.csv and contact.csv.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RolloutArgs {
    /// Policy parameter file. The neutral standing policy when absent.
    #[arg(long)]
    pub policy: Option<PathBuf>,
    #[command(flatten)]
    pub gait: GaitArgs,
    #[arg(long, default_value_t = 240)]
    pub horizon: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw randomized dynamics from the seed.
    #[arg(long)]
    pub randomize: bool,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub speed: f64,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: f64,
    /// single or multi.
    #[arg(long, default_value = "single")]
    pub mode: RewardMode,
    /// JSON-lines trajectory output.
    #[arg(long)]
    pub out: PathBuf,
}
