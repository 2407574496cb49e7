//! Planar biped: a pitching pelvis and two point feet joined to it by
//! proportional-derivative leg forces, on a sloped spring-damper ground.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::RandomizationConfig;
use crate::reward::{pitch_quat, TrajectoryStep};

pub const GRAVITY: f64 = 9.81;

/// Penalty contact between a foot and the ground.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactParams {
    /// N/m
    pub stiffness: f64,
    /// N·s/m
    pub damping: f64,
    /// Viscous tangential gain before the friction clamp, N·s/m.
    pub tangential_damping: f64,
}

impl Default for ContactParams {
    fn default() -> Self {
        Self {
            stiffness: 3.0e4,
            damping: 1.0e3,
            tangential_damping: 2.0e3,
        }
    }
}

/// Nominal model constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyParams {
    pub pelvis_mass: f64,
    pub pelvis_inertia: f64,
    pub foot_mass: f64,
    /// Hip joint distance below the pelvis center, m.
    pub hip_offset: f64,
    /// N/m at stiffness scale 1.
    pub leg_stiffness: f64,
    /// N·s/m at damping scale 1.
    pub leg_damping: f64,
    /// Passive pitch stabilizer, N·m/rad and N·m·s/rad.
    pub pitch_stiffness: f64,
    pub pitch_damping: f64,
    /// Nominal pelvis height and neutral vertical foot offset, m.
    pub stand_height: f64,
    /// Leg force to reported joint torque, m.
    pub torque_arm: f64,
    pub contact: ContactParams,
    pub control_dt: f64,
    pub substeps: u32,
    /// Pelvis height below which a rollout counts as a fall, m.
    pub fall_height: f64,
    /// Relative jitter on the control period, drawn per step. Zero disables.
    pub rate_jitter: f64,
}

impl Default for ToyParams {
    fn default() -> Self {
        Self {
            pelvis_mass: 30.0,
            pelvis_inertia: 1.5,
            foot_mass: 1.5,
            hip_offset: 0.1,
            leg_stiffness: 5000.0,
            leg_damping: 300.0,
            pitch_stiffness: 300.0,
            pitch_damping: 30.0,
            stand_height: 0.9,
            torque_arm: 0.05,
            contact: ContactParams::default(),
            control_dt: 1.0 / 40.0,
            substeps: 40,
            fall_height: 0.4,
            rate_jitter: 0.0,
        }
    }
}

impl ToyParams {
    pub fn total_mass(&self, cfg: &RandomizationConfig) -> f64 {
        self.pelvis_mass * cfg.mass_scale + 2.0 * self.foot_mass
    }

    pub fn body_weight(&self, cfg: &RandomizationConfig) -> f64 {
        self.total_mass(cfg) * GRAVITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FootState {
    /// (x, z), m
    pub pos: [f64; 2],
    pub vel: [f64; 2],
    pub contact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyBipedState {
    /// (x, z), m
    pub pelvis_pos: [f64; 2],
    pub pelvis_vel: [f64; 2],
    /// rad, about the lateral axis
    pub pitch: f64,
    pub pitch_rate: f64,
    pub feet: [FootState; 2],
    /// s
    pub time: f64,
}

impl ToyBipedState {
    /// Pelvis at the stand height with both feet on the ground below it.
    pub fn standing(params: &ToyParams) -> Self {
        Self {
            pelvis_pos: [0.0, params.stand_height],
            pelvis_vel: [0.0; 2],
            pitch: 0.0,
            pitch_rate: 0.0,
            feet: [FootState::default(); 2],
            time: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        let f = |v: &[f64]| v.iter().all(|x| x.is_finite());
        f(&self.pelvis_pos)
            && f(&self.pelvis_vel)
            && self.pitch.is_finite()
            && self.pitch_rate.is_finite()
            && self.feet.iter().all(|ft| f(&ft.pos) && f(&ft.vel))
    }
}

/// Per-foot targets relative to the pelvis center and stiffness scales.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyAction {
    /// (Δx, Δz) per foot, m
    pub targets: [[f64; 2]; 2],
    pub stiffness: [f64; 2],
}

pub const DX_LIMIT: f64 = 0.5;
pub const DZ_RANGE: (f64, f64) = (-1.0, -0.2);
pub const STIFFNESS_RANGE: (f64, f64) = (0.5, 2.0);

impl ToyAction {
    /// Feet straight below the pelvis at the stand height, unit stiffness.
    pub fn neutral(params: &ToyParams) -> Self {
        Self {
            targets: [[0.0, -params.stand_height]; 2],
            stiffness: [1.0; 2],
        }
    }

    /// Clamps into the leg workspace. Non-finite entries fall back to neutral.
    pub fn clamped(mut self, params: &ToyParams) -> Self {
        let neutral = Self::neutral(params);
        for f in 0..2 {
            let [dx, dz] = &mut self.targets[f];
            *dx = if dx.is_finite() { dx.clamp(-DX_LIMIT, DX_LIMIT) } else { 0.0 };
            *dz = if dz.is_finite() {
                dz.clamp(DZ_RANGE.0, DZ_RANGE.1)
            } else {
                neutral.targets[f][1]
            };
            let s = &mut self.stiffness[f];
            *s = if s.is_finite() { s.clamp(STIFFNESS_RANGE.0, STIFFNESS_RANGE.1) } else { 1.0 };
        }
        self
    }

    /// `[Δx_l, Δz_l, Δx_r, Δz_r, k_l, k_r]`
    pub fn to_vec(&self) -> Vec<f64> {
        vec![
            self.targets[0][0],
            self.targets[0][1],
            self.targets[1][0],
            self.targets[1][1],
            self.stiffness[0],
            self.stiffness[1],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SimError {
    #[error("simulation diverged at t = {time:.4} s")]
    Diverged { time: f64 },
}

/// Contact force on one foot: `(force, penetration)`.
pub(crate) fn contact_force(
    pos: [f64; 2],
    vel: [f64; 2],
    contact: &ContactParams,
    cfg: &RandomizationConfig,
) -> ([f64; 2], f64) {
    let (s, c) = cfg.ground_slope.sin_cos();
    let normal = [-s, c];
    let tangent = [c, s];
    let penetration = -(pos[0] * normal[0] + pos[1] * normal[1]);
    if penetration <= 0.0 {
        return ([0.0; 2], penetration);
    }
    let vn = vel[0] * normal[0] + vel[1] * normal[1];
    let fn_ = (contact.stiffness * penetration - contact.damping * vn).max(0.0);
    let vt = vel[0] * tangent[0] + vel[1] * tangent[1];
    let limit = cfg.ground_friction * fn_;
    let ft = (-contact.tangential_damping * vt).clamp(-limit, limit);
    (
        [fn_ * normal[0] + ft * tangent[0], fn_ * normal[1] + ft * tangent[1]],
        penetration,
    )
}

/// Integrates one control period with semi-implicit Euler substeps and returns
/// the next state plus the step's measurements. `dt` is the control period.
pub fn step(
    state: &ToyBipedState,
    action: &ToyAction,
    prev_action: &[f64],
    cfg: &RandomizationConfig,
    params: &ToyParams,
    dt: f64,
    t: u64,
) -> Result<(ToyBipedState, TrajectoryStep), SimError> {
    if !state.is_finite() {
        return Err(SimError::Diverged { time: state.time });
    }
    let action = action.clamped(params);
    let mut s = *state;
    let h = dt / params.substeps as f64;
    let m_p = params.pelvis_mass * cfg.mass_scale;
    let inertia = params.pelvis_inertia * cfg.mass_scale;
    let m_f = params.foot_mass;
    let d_leg = params.leg_damping * cfg.damping_scale;

    let mut grf_sum = [[0.0; 2]; 2];
    let mut leg_sum = [[0.0; 2]; 2];
    let v0 = s.pelvis_vel;

    for _ in 0..params.substeps {
        let (sp, cp) = s.pitch.sin_cos();
        let r = [-params.hip_offset * sp, -params.hip_offset * cp];
        let hip_vel = [
            s.pelvis_vel[0] - params.hip_offset * cp * s.pitch_rate,
            s.pelvis_vel[1] + params.hip_offset * sp * s.pitch_rate,
        ];

        let mut pelvis_force = [0.0, -m_p * GRAVITY];
        let mut pelvis_torque =
            -params.pitch_stiffness * s.pitch - params.pitch_damping * s.pitch_rate;
        let mut foot_force = [[0.0, -m_f * GRAVITY]; 2];

        for (f, foot) in s.feet.iter_mut().enumerate() {
            let k = params.leg_stiffness * action.stiffness[f];
            let target = [
                s.pelvis_pos[0] + action.targets[f][0],
                s.pelvis_pos[1] + action.targets[f][1],
            ];
            let leg = [
                k * (target[0] - foot.pos[0]) - d_leg * (foot.vel[0] - hip_vel[0]),
                k * (target[1] - foot.pos[1]) - d_leg * (foot.vel[1] - hip_vel[1]),
            ];
            let (grf, _) = contact_force(foot.pos, foot.vel, &params.contact, cfg);
            foot.contact = grf != [0.0; 2];

            foot_force[f][0] += leg[0] + grf[0];
            foot_force[f][1] += leg[1] + grf[1];
            pelvis_force[0] -= leg[0];
            pelvis_force[1] -= leg[1];
            // y-component of r × (−leg)
            pelvis_torque += r[1] * (-leg[0]) - r[0] * (-leg[1]);

            for a in 0..2 {
                grf_sum[f][a] += grf[a];
                leg_sum[f][a] += leg[a];
            }
        }

        for (f, foot) in s.feet.iter_mut().enumerate() {
            foot.vel[0] += h * foot_force[f][0] / m_f;
            foot.vel[1] += h * foot_force[f][1] / m_f;
            foot.pos[0] += h * foot.vel[0];
            foot.pos[1] += h * foot.vel[1];
        }
        s.pelvis_vel[0] += h * pelvis_force[0] / m_p;
        s.pelvis_vel[1] += h * pelvis_force[1] / m_p;
        s.pelvis_pos[0] += h * s.pelvis_vel[0];
        s.pelvis_pos[1] += h * s.pelvis_vel[1];
        s.pitch_rate += h * pelvis_torque / inertia;
        s.pitch += h * s.pitch_rate;
        s.time += h;
    }
    if !s.is_finite() {
        return Err(SimError::Diverged { time: s.time });
    }

    let n = params.substeps as f64;
    let mean = |v: [f64; 2]| [v[0] / n, 0.0, v[1] / n];
    let torque: Vec<f64> = leg_sum
        .iter()
        .flat_map(|l| [l[0] / n * params.torque_arm, l[1] / n * params.torque_arm])
        .collect();
    let a = action.to_vec();
    let prev = if prev_action.len() == a.len() {
        prev_action.to_vec()
    } else {
        a.clone()
    };
    let meas = TrajectoryStep {
        t,
        foot_force_left: mean(grf_sum[0]),
        foot_force_right: mean(grf_sum[1]),
        foot_speed_left: [s.feet[0].vel[0], 0.0, s.feet[0].vel[1]],
        foot_speed_right: [s.feet[1].vel[0], 0.0, s.feet[1].vel[1]],
        pelvis_velocity: [s.pelvis_vel[0], 0.0],
        pelvis_orientation: pitch_quat(s.pitch + cfg.encoder_offset),
        pelvis_rot_velocity: [0.0, s.pitch_rate, 0.0],
        pelvis_acceleration: [
            (s.pelvis_vel[0] - v0[0]) / dt,
            0.0,
            (s.pelvis_vel[1] - v0[1]) / dt,
        ],
        action: a,
        prev_action: prev,
        joint_torques: torque,
        foot_position_left: [s.feet[0].pos[0], 0.0, s.feet[0].pos[1]],
        foot_position_right: [s.feet[1].pos[0], 0.0, s.feet[1].pos[1]],
    };
    Ok((s, meas))
}
