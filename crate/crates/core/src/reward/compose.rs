//! Composition of kernels into gait, command, smoothness and multi-gait rewards.

use serde::{Deserialize, Serialize};

use super::kernels::{
    hop_symmetry_cost, kernels_unchecked, omega, planar_foot_distance_sq, standing_cost, HopGate,
    Kernels,
};
use super::types::{Commands, RewardWeights, TrajectoryStep};
use super::RewardError;
use crate::gait_spec::{CoeffPair, Foot, Gait};
use crate::phase_math::CycleTime;

/// Weights plus the two configurable measurements of the multi-gait reward.
#[derive(Debug, Clone, Copy)]
pub struct RewardConfig {
    pub weights: RewardWeights,
    pub hop_gate: HopGate,
    /// `err_sym` used by the hop-symmetry and standing costs.
    pub symmetry_error: fn(&TrajectoryStep) -> f64,
}

impl Default for RewardConfig {
    fn default() -> Self {
        Self {
            weights: RewardWeights::default(),
            hop_gate: HopGate::default(),
            symmetry_error: planar_foot_distance_sq,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RewardMode {
    /// `R_bipedal + R_cmd + R_smooth + β` with `ω = 1`.
    #[default]
    Single,
    /// Weighted multi-gait reward with standing and hop-symmetry penalties.
    Multi,
}

impl std::str::FromStr for RewardMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" => Ok(RewardMode::Single),
            "multi" => Ok(RewardMode::Multi),
            other => Err(format!("unknown reward mode '{other}' (expected single or multi)")),
        }
    }
}

/// All intermediate values of one step's reward.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RewardTerms {
    pub kernels: Kernels,
    /// Expected coefficients per foot, indexed by [`Foot::index`].
    pub coeffs: [CoeffPair; 2],
    pub omega: f64,
    pub bipedal: f64,
    pub cmd: f64,
    pub smooth: f64,
    pub standing: f64,
    pub hop_sym: f64,
    pub total: f64,
}

impl RewardTerms {
    /// Total recomputed from the stored components.
    pub fn recompose(&self, w: &RewardWeights) -> f64 {
        w.w_bipedal * self.bipedal
            + w.w_cmd * self.cmd
            + w.w_smooth * self.smooth
            + w.w_standing * (self.omega - 1.0) * self.standing
            - w.w_hopsym * self.hop_sym
            + w.beta
    }
}

/// `Σ_foot E[C_frc] q_frc + E[C_spd] q_spd`.
pub fn bipedal_from(coeffs: &[CoeffPair; 2], k: &Kernels) -> f64 {
    Foot::BOTH
        .iter()
        .map(|f| {
            let i = f.index();
            coeffs[i].force * k.frc[i] + coeffs[i].speed * k.spd[i]
        })
        .sum()
}

/// `−(q_ẋ + q_ẏ + q_orientation)`
pub fn cmd_from(k: &Kernels) -> f64 {
    -(k.xdot + k.ydot + k.orientation)
}

/// `−(q_action_diff + q_torque + q_pelvis_acc)`
pub fn smooth_from(k: &Kernels) -> f64 {
    -(k.action_diff + k.torque + k.pelvis_acc)
}

pub fn coeffs_at(gait: &Gait, phi: CycleTime) -> [CoeffPair; 2] {
    [gait.coeff_pair(Foot::Left, phi), gait.coeff_pair(Foot::Right, phi)]
}

/// Reward of one step with explicit weights and `ω`. `coeffs` are the gait's
/// expected coefficients at the step's cycle time.
pub fn compose(
    gait: &Gait,
    coeffs: [CoeffPair; 2],
    step: &TrajectoryStep,
    cmd: &Commands,
    weights: &RewardWeights,
    omega: f64,
    cfg: &RewardConfig,
) -> RewardTerms {
    let kernels = kernels_unchecked(step, cmd, omega);
    let err_sym = (cfg.symmetry_error)(step);
    let mut terms = RewardTerms {
        kernels,
        coeffs,
        omega,
        bipedal: bipedal_from(&coeffs, &kernels),
        cmd: cmd_from(&kernels),
        smooth: smooth_from(&kernels),
        standing: standing_cost(err_sym, kernels.action_diff),
        hop_sym: hop_symmetry_cost(err_sym, gait, cfg.hop_gate),
        total: 0.0,
    };
    terms.total = terms.recompose(weights);
    terms
}

/// Weights and `ω` a mode uses for `gait`.
pub fn mode_parameters(mode: RewardMode, gait: &Gait, cfg: &RewardConfig) -> (RewardWeights, f64) {
    match mode {
        RewardMode::Single => (
            RewardWeights {
                beta: cfg.weights.beta,
                ..RewardWeights::single_gait()
            },
            1.0,
        ),
        RewardMode::Multi => (cfg.weights, omega(gait.swing_ratio())),
    }
}

fn checked(step: &TrajectoryStep, cmd: &Commands) -> Result<(), RewardError> {
    step.validate()?;
    cmd.validate()
}

/// `E[R_bipedal(s, φ)]` with `ω = 1`.
pub fn bipedal_reward(
    gait: &Gait,
    phi: CycleTime,
    step: &TrajectoryStep,
    cmd: &Commands,
) -> Result<f64, RewardError> {
    checked(step, cmd)?;
    let k = kernels_unchecked(step, cmd, 1.0);
    Ok(bipedal_from(&coeffs_at(gait, phi), &k))
}

pub fn cmd_reward(step: &TrajectoryStep, cmd: &Commands) -> Result<f64, RewardError> {
    checked(step, cmd)?;
    Ok(cmd_from(&kernels_unchecked(step, cmd, 1.0)))
}

pub fn smooth_reward(step: &TrajectoryStep) -> Result<f64, RewardError> {
    step.validate()?;
    Ok(smooth_from(&kernels_unchecked(step, &Commands::default(), 1.0)))
}

/// The generic multi-gait reward, `ω` taken from the gait's swing ratio.
pub fn multi_reward(
    gait: &Gait,
    phi: CycleTime,
    step: &TrajectoryStep,
    cmd: &Commands,
    cfg: &RewardConfig,
) -> Result<f64, RewardError> {
    checked(step, cmd)?;
    let (w, om) = mode_parameters(RewardMode::Multi, gait, cfg);
    Ok(compose(gait, coeffs_at(gait, phi), step, cmd, &w, om, cfg).total)
}

/// `E[R_bipedal] + R_smooth + R_cmd + β` with `ω = 1`.
pub fn single_gait_reward(
    gait: &Gait,
    phi: CycleTime,
    step: &TrajectoryStep,
    cmd: &Commands,
    beta: f64,
) -> Result<f64, RewardError> {
    checked(step, cmd)?;
    let k = kernels_unchecked(step, cmd, 1.0);
    Ok(bipedal_from(&coeffs_at(gait, phi), &k) + smooth_from(&k) + cmd_from(&k) + beta)
}
