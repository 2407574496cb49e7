//! Evolution-strategy search over periodic foot-target policies, and the
//! contact analysis used to judge the resulting gaits.

mod analysis;
mod es;
mod policy;

pub use analysis::{
    contact_pattern, grf_coefficient_report, ContactPattern, GrfReport, GrfRow, CONTACT_THRESHOLD,
    GRF_BINS,
};
pub use es::{episode_seeds, evaluate, optimize, EsConfig, GenerationStats, SearchResult};
pub use policy::{PolicyError, PolicyParams, HARMONICS, POLICY_DIM, SERIES_LEN};

use thiserror::Error;

use crate::gait_spec::Gait;
use crate::reward::Commands;
use crate::toy_env::{run_episode, Rollout, RolloutConfig, ToyParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("trajectory of {steps} steps spans fewer than 2 cycles of {period}")]
    TooShort { steps: usize, period: usize },
    #[error(transparent)]
    Policy(#[from] PolicyError),
}

/// Cycles dropped from the start of an evaluation rollout before analysis.
pub const WARMUP_CYCLES: usize = 2;

/// Gait analysis of one nominal-dynamics rollout.
#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    pub rollout: Rollout,
    pub pattern: ContactPattern,
    pub grf: GrfReport,
}

impl Assessment {
    /// Deep-stance over deep-swing mean GRF.
    pub fn stance_swing_ratio(&self) -> Option<f64> {
        Some(self.grf.deep_stance_grf()? / self.grf.deep_swing_grf()?)
    }
}

/// Rolls `params` out without randomization and analyzes the cycles after
/// [`WARMUP_CYCLES`].
pub fn assess(
    params: &PolicyParams,
    gait: &Gait,
    cmd: Commands,
    horizon: usize,
    seed: u64,
    toy: &ToyParams,
) -> Result<Assessment, SearchError> {
    let rc = RolloutConfig {
        horizon,
        seed,
        randomize: false,
        params: *toy,
    };
    let rollout = run_episode(params, gait, cmd, &rc);
    let skip = (WARMUP_CYCLES * gait.period_steps()).min(rollout.steps.len());
    let tail = &rollout.steps[skip..];
    let weight = toy.body_weight(&rollout.dynamics);
    let pattern = contact_pattern(tail, gait.period_steps(), weight)?;
    let grf = grf_coefficient_report(tail, gait)?;
    Ok(Assessment {
        rollout,
        pattern,
        grf,
    })
}

#[cfg(test)]
mod tests;
