//! Reward kernels, their composition, and trajectory scoring.

mod compose;
mod kernels;
mod record;
mod score;
mod types;

pub use compose::{
    bipedal_from, bipedal_reward, cmd_from, cmd_reward, coeffs_at, compose, mode_parameters,
    multi_reward, single_gait_reward, smooth_from, smooth_reward, RewardConfig, RewardMode,
    RewardTerms,
};
pub use kernels::{
    hop_symmetry_cost, measurement_kernels, omega, planar_foot_distance_sq, standing_cost,
    HopGate, Kernels,
};
pub use record::{
    parse_trajectory_str, read_trajectory, write_trajectory, LoggedStep, ParseError,
    ParseErrorKind,
};
pub use score::{
    constant_schedule, sampled_return, score_trajectory, PhaseClock, RewardBreakdown,
    ScheduleEntry, StepRecord, DEFAULT_GAMMA,
};
pub use types::{
    pitch_quat, yaw_quat, Commands, Quat, RewardWeights, TrajectoryStep, Vec3, IDENTITY_QUAT,
};

pub(crate) use types::norm;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RewardError {
    #[error("{0} contains a non-finite value")]
    NonFinite(&'static str),
    #[error("action has length {action} but prev_action has length {prev}")]
    ActionLength { action: usize, prev: usize },
    #[error("{field} is not a unit quaternion (norm {norm})")]
    QuaternionNorm { field: &'static str, norm: f64 },
    #[error("omega must lie in [0, 1], got {0}")]
    Omega(f64),
    #[error("discount must lie in [0, 1], got {0}")]
    Gamma(f64),
    #[error("trajectory has {steps} steps but the schedule has {schedule}")]
    ScheduleLength { steps: usize, schedule: usize },
}
