//! Measurement kernels `q_i(s)`, all of the form `1 − exp(−·)`.

use serde::{Deserialize, Serialize};

use super::types::{norm, norm_sq, Commands, TrajectoryStep};
use super::RewardError;
use crate::gait_spec::{Foot, Gait};

/// `ω = (1 + exp(−50 (r_swing − 0.15)))⁻¹`: near one for ordinary locomotion,
/// near zero when the swing ratio approaches standing.
pub fn omega(swing_ratio: f64) -> f64 {
    1.0 / (1.0 + (-50.0 * (swing_ratio - 0.15)).exp())
}

fn kernel(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// Every named `q` value of one step.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Kernels {
    /// Indexed by [`Foot::index`].
    pub frc: [f64; 2],
    pub spd: [f64; 2],
    pub xdot: f64,
    pub ydot: f64,
    pub orientation: f64,
    pub action_diff: f64,
    pub torque: f64,
    pub pelvis_acc: f64,
}

/// Evaluates every kernel. Force, speed and velocity-tracking kernels are
/// scaled by `omega`.
pub fn measurement_kernels(
    step: &TrajectoryStep,
    cmd: &Commands,
    omega: f64,
) -> Result<Kernels, RewardError> {
    step.validate()?;
    cmd.validate()?;
    if !(0.0..=1.0).contains(&omega) {
        return Err(RewardError::Omega(omega));
    }
    Ok(kernels_unchecked(step, cmd, omega))
}

pub(crate) fn kernels_unchecked(step: &TrajectoryStep, cmd: &Commands, omega: f64) -> Kernels {
    let mut frc = [0.0; 2];
    let mut spd = [0.0; 2];
    for foot in Foot::BOTH {
        frc[foot.index()] = kernel(omega * norm_sq(step.foot_force(foot)) / 100.0);
        spd[foot.index()] = kernel(2.0 * omega * norm_sq(step.foot_speed(foot)));
    }
    let q = &step.pelvis_orientation;
    let d = &cmd.quat_desired;
    let dot = q[0] * d[0] + q[1] * d[1] + q[2] * d[2] + q[3] * d[3];
    let action_delta: f64 = step
        .action
        .iter()
        .zip(&step.prev_action)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Kernels {
        frc,
        spd,
        xdot: kernel(2.0 * omega * (cmd.xdot_desired - step.pelvis_velocity[0]).abs()),
        ydot: kernel(2.0 * omega * (cmd.ydot_desired - step.pelvis_velocity[1]).abs()),
        orientation: kernel(3.0 * (1.0 - dot * dot).max(0.0)),
        action_diff: kernel(5.0 * action_delta),
        torque: kernel(0.05 * norm(&step.joint_torques)),
        pelvis_acc: kernel(
            0.10 * (norm(&step.pelvis_rot_velocity) + norm(&step.pelvis_acceleration)),
        ),
    }
}

/// Squared planar (x, y) distance between the feet, m².
pub fn planar_foot_distance_sq(step: &TrajectoryStep) -> f64 {
    let l = step.foot_position_left;
    let r = step.foot_position_right;
    (l[0] - r[0]).powi(2) + (l[1] - r[1]).powi(2)
}

/// How the hop-symmetry cost is gated by the offset difference `Δθ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopGate {
    /// `exp(−5 |sin(2πΔθ)|)`. Fully open at both `Δθ = 0` and `Δθ = 0.5`.
    #[default]
    AsPrinted,
    /// `exp(−5 |sin(πΔθ)|)`: open only when the offsets match.
    FullPeriod,
}

impl HopGate {
    pub fn value(self, delta_theta: f64) -> f64 {
        let arg = match self {
            HopGate::AsPrinted => std::f64::consts::TAU * delta_theta,
            HopGate::FullPeriod => std::f64::consts::PI * delta_theta,
        };
        (-5.0 * arg.sin().abs()).exp()
    }
}

/// `1 − exp(−err_sym · gate(θ_left − θ_right))`.
pub fn hop_symmetry_cost(err_sym: f64, gait: &Gait, gate: HopGate) -> f64 {
    let dtheta = gait.theta(Foot::Left) - gait.theta(Foot::Right);
    kernel(err_sym * gate.value(dtheta))
}

/// `1 − exp(−(err_sym + 20 q_action_diff))`.
pub fn standing_cost(err_sym: f64, q_action_diff: f64) -> f64 {
    kernel(err_sym + 20.0 * q_action_diff)
}
