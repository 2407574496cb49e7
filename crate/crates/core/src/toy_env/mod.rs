//! Deterministic planar biped used to produce trajectories for the scorer.

mod dynamics;
mod randomization;
mod synthetic;

pub use dynamics::{
    step, ContactParams, FootState, SimError, ToyAction, ToyBipedState, ToyParams, DX_LIMIT,
    DZ_RANGE, GRAVITY, STIFFNESS_RANGE,
};
pub use randomization::{ranges, RandomizationConfig, NOMINAL_FRICTION};
pub use synthetic::{synthetic_contact_trajectory, ContactShift};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gait_spec::{Foot, Gait, GaitObservation};
use crate::phase_math::CycleTime;
use crate::reward::{Commands, LoggedStep, PhaseClock, TrajectoryStep};

/// Nominal standing state and, if `randomize`, one seeded dynamics draw.
pub fn reset(params: &ToyParams, seed: u64, randomize: bool) -> (ToyBipedState, RandomizationConfig) {
    let cfg = if randomize {
        RandomizationConfig::from_seed(seed)
    } else {
        RandomizationConfig::nominal()
    };
    (ToyBipedState::standing(params), cfg)
}

/// Everything a controller may read at one control step.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyInput {
    pub t: u64,
    pub phi: CycleTime,
    /// Clock argument `φ + θ_f` per foot.
    pub foot_phase: [CycleTime; 2],
    pub gait: GaitObservation,
    pub cmd: Commands,
    /// Reported pitch, encoder offset included.
    pub pitch: f64,
    pub pitch_rate: f64,
    pub pelvis_velocity: [f64; 2],
    pub pelvis_height: f64,
}

pub trait Policy {
    fn act(&self, input: &PolicyInput, params: &ToyParams) -> ToyAction;
}

/// Holds every foot at its neutral target.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroPolicy;

impl Policy for ZeroPolicy {
    fn act(&self, _: &PolicyInput, params: &ToyParams) -> ToyAction {
        ToyAction::neutral(params)
    }
}

impl<P: Policy + ?Sized> Policy for &P {
    fn act(&self, input: &PolicyInput, params: &ToyParams) -> ToyAction {
        (**self).act(input, params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Horizon,
    Fell,
    Diverged,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RolloutConfig {
    pub horizon: usize,
    pub seed: u64,
    pub randomize: bool,
    pub params: ToyParams,
}

impl RolloutConfig {
    pub fn new(horizon: usize, seed: u64) -> Self {
        Self {
            horizon,
            seed,
            randomize: true,
            params: ToyParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rollout {
    pub steps: Vec<TrajectoryStep>,
    pub cmd: Commands,
    pub dynamics: RandomizationConfig,
    pub termination: Termination,
    pub final_state: ToyBipedState,
}

impl Rollout {
    pub fn fell(&self) -> bool {
        self.termination == Termination::Fell
    }

    pub fn logged(&self) -> Vec<LoggedStep> {
        self.steps
            .iter()
            .map(|s| LoggedStep {
                step: s.clone(),
                cmd: self.cmd,
            })
            .collect()
    }
}

/// Closed loop of observation, policy and step. Divergence ends the episode
/// and keeps the steps taken so far.
pub fn run_episode<P: Policy>(policy: &P, gait: &Gait, cmd: Commands, cfg: &RolloutConfig) -> Rollout {
    let params = &cfg.params;
    let (mut state, dynamics) = reset(params, cfg.seed, cfg.randomize);
    let mut jitter_rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut clock = PhaseClock::new();
    let mut prev: Vec<f64> = ToyAction::neutral(params).to_vec();
    let mut steps = Vec::with_capacity(cfg.horizon);
    let mut termination = Termination::Horizon;

    for t in 0..cfg.horizon as u64 {
        let phi = clock.phi();
        let input = PolicyInput {
            t,
            phi,
            foot_phase: Foot::BOTH.map(|f| phi + gait.theta(f)),
            gait: gait.observation(t),
            cmd,
            pitch: state.pitch + dynamics.encoder_offset,
            pitch_rate: state.pitch_rate,
            pelvis_velocity: state.pelvis_vel,
            pelvis_height: state.pelvis_pos[1],
        };
        let action = policy.act(&input, params);
        let dt = if params.rate_jitter > 0.0 {
            params.control_dt * (1.0 + jitter_rng.random_range(-params.rate_jitter..=params.rate_jitter))
        } else {
            params.control_dt
        };
        match step(&state, &action, &prev, &dynamics, params, dt, t) {
            Ok((next, meas)) => {
                prev.clone_from(&meas.action);
                steps.push(meas);
                state = next;
            }
            Err(_) => {
                termination = Termination::Diverged;
                break;
            }
        }
        if state.pelvis_pos[1] < params.fall_height {
            termination = Termination::Fell;
            break;
        }
        clock.advance(gait.period_steps());
    }
    Rollout {
        steps,
        cmd,
        dynamics,
        termination,
        final_state: state,
    }
}

/// As [`run_episode`], with divergence reported as an error.
pub fn rollout<P: Policy>(
    policy: &P,
    gait: &Gait,
    cmd: Commands,
    cfg: &RolloutConfig,
) -> Result<Rollout, SimError> {
    let r = run_episode(policy, gait, cmd, cfg);
    match r.termination {
        Termination::Diverged => Err(SimError::Diverged {
            time: r.final_state.time,
        }),
        _ => Ok(r),
    }
}

#[cfg(test)]
mod tests;
