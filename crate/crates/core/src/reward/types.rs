use serde::{Deserialize, Serialize};

use super::RewardError;
use crate::gait_spec::Foot;

pub type Vec3 = [f64; 3];
/// Scalar-first unit quaternion `(w, x, y, z)`.
pub type Quat = [f64; 4];

pub const IDENTITY_QUAT: Quat = [1.0, 0.0, 0.0, 0.0];
const QUAT_NORM_TOL: f64 = 1e-6;

/// One timestep of measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryStep {
    pub t: u64,
    /// Ground reaction force on each foot, N.
    pub foot_force_left: Vec3,
    pub foot_force_right: Vec3,
    /// Foot velocity, m/s.
    pub foot_speed_left: Vec3,
    pub foot_speed_right: Vec3,
    /// Pelvis forward and lateral velocity, m/s.
    pub pelvis_velocity: [f64; 2],
    pub pelvis_orientation: Quat,
    /// rad/s
    pub pelvis_rot_velocity: Vec3,
    /// m/s²
    pub pelvis_acceleration: Vec3,
    pub action: Vec<f64>,
    pub prev_action: Vec<f64>,
    /// N·m
    pub joint_torques: Vec<f64>,
    /// Foot positions, m.
    pub foot_position_left: Vec3,
    pub foot_position_right: Vec3,
}

impl TrajectoryStep {
    /// A motionless, unloaded step with `action_dim` zero actions.
    pub fn zeroed(t: u64, action_dim: usize) -> Self {
        Self {
            t,
            foot_force_left: [0.0; 3],
            foot_force_right: [0.0; 3],
            foot_speed_left: [0.0; 3],
            foot_speed_right: [0.0; 3],
            pelvis_velocity: [0.0; 2],
            pelvis_orientation: IDENTITY_QUAT,
            pelvis_rot_velocity: [0.0; 3],
            pelvis_acceleration: [0.0; 3],
            action: vec![0.0; action_dim],
            prev_action: vec![0.0; action_dim],
            joint_torques: Vec::new(),
            foot_position_left: [0.0; 3],
            foot_position_right: [0.0; 3],
        }
    }

    pub fn foot_force(&self, foot: Foot) -> &Vec3 {
        match foot {
            Foot::Left => &self.foot_force_left,
            Foot::Right => &self.foot_force_right,
        }
    }

    pub fn foot_speed(&self, foot: Foot) -> &Vec3 {
        match foot {
            Foot::Left => &self.foot_speed_left,
            Foot::Right => &self.foot_speed_right,
        }
    }

    pub fn foot_position(&self, foot: Foot) -> &Vec3 {
        match foot {
            Foot::Left => &self.foot_position_left,
            Foot::Right => &self.foot_position_right,
        }
    }

    pub fn validate(&self) -> Result<(), RewardError> {
        let vecs: [(&'static str, &[f64]); 13] = [
            ("foot_force_left", &self.foot_force_left),
            ("foot_force_right", &self.foot_force_right),
            ("foot_speed_left", &self.foot_speed_left),
            ("foot_speed_right", &self.foot_speed_right),
            ("pelvis_velocity", &self.pelvis_velocity),
            ("pelvis_orientation", &self.pelvis_orientation),
            ("pelvis_rot_velocity", &self.pelvis_rot_velocity),
            ("pelvis_acceleration", &self.pelvis_acceleration),
            ("action", &self.action),
            ("prev_action", &self.prev_action),
            ("joint_torques", &self.joint_torques),
            ("foot_position_left", &self.foot_position_left),
            ("foot_position_right", &self.foot_position_right),
        ];
        for (name, v) in vecs {
            if v.iter().any(|x| !x.is_finite()) {
                return Err(RewardError::NonFinite(name));
            }
        }
        if self.action.len() != self.prev_action.len() {
            return Err(RewardError::ActionLength {
                action: self.action.len(),
                prev: self.prev_action.len(),
            });
        }
        check_unit(&self.pelvis_orientation, "pelvis_orientation")
    }
}

/// Commanded velocity and heading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Commands {
    pub xdot_desired: f64,
    pub ydot_desired: f64,
    pub quat_desired: Quat,
}

impl Default for Commands {
    fn default() -> Self {
        Self {
            xdot_desired: 0.0,
            ydot_desired: 0.0,
            quat_desired: IDENTITY_QUAT,
        }
    }
}

impl Commands {
    pub fn validate(&self) -> Result<(), RewardError> {
        if !(self.xdot_desired.is_finite() && self.ydot_desired.is_finite()) {
            return Err(RewardError::NonFinite("commanded velocity"));
        }
        if self.quat_desired.iter().any(|x| !x.is_finite()) {
            return Err(RewardError::NonFinite("quat_desired"));
        }
        check_unit(&self.quat_desired, "quat_desired")
    }
}

fn check_unit(q: &Quat, name: &'static str) -> Result<(), RewardError> {
    let n = norm(q);
    if (n - 1.0).abs() > QUAT_NORM_TOL {
        return Err(RewardError::QuaternionNorm { field: name, norm: n });
    }
    Ok(())
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Quaternion for a rotation of `angle` radians about the y (pitch) axis.
pub fn pitch_quat(angle: f64) -> Quat {
    let h = 0.5 * angle;
    [h.cos(), 0.0, h.sin(), 0.0]
}

/// Quaternion for a rotation of `angle` radians about the z (yaw) axis.
pub fn yaw_quat(angle: f64) -> Quat {
    let h = 0.5 * angle;
    [h.cos(), 0.0, 0.0, h.sin()]
}

/// Component weights and bias of the composed reward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardWeights {
    pub w_bipedal: f64,
    pub w_cmd: f64,
    pub w_smooth: f64,
    pub w_standing: f64,
    pub w_hopsym: f64,
    pub beta: f64,
}

impl Default for RewardWeights {
    /// Weights of the generic multi-gait reward.
    fn default() -> Self {
        Self {
            w_bipedal: 0.400,
            w_cmd: 0.300,
            w_smooth: 0.100,
            w_standing: 0.100,
            w_hopsym: 0.100,
            beta: 1.0,
        }
    }
}

impl RewardWeights {
    /// Unit weights with the transition penalties switched off.
    pub fn single_gait() -> Self {
        Self {
            w_bipedal: 1.0,
            w_cmd: 1.0,
            w_smooth: 1.0,
            w_standing: 0.0,
            w_hopsym: 0.0,
            beta: 1.0,
        }
    }
}
