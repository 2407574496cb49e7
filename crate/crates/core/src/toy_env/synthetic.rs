use crate::gait_spec::{Foot, Gait};
use crate::reward::{PhaseClock, TrajectoryStep, IDENTITY_QUAT};

use super::GRAVITY;

/// How the manufactured contact windows relate to the spec.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContactShift {
    Exact,
    /// Every window moved later by this many cycles.
    Shifted(f64),
}

impl ContactShift {
    fn cycles(self) -> f64 {
        match self {
            ContactShift::Exact => 0.0,
            ContactShift::Shifted(d) => d,
        }
    }
}

const SYNTHETIC_MASS: f64 = 33.0;
const SWING_SPEED: [f64; 3] = [1.0, 0.0, 0.3];

/// Kinematic steps whose stance feet share body weight and whose swing feet
/// move, following the crisp phase windows of `gait`.
pub fn synthetic_contact_trajectory(gait: &Gait, horizon: usize, shift: ContactShift) -> Vec<TrajectoryStep> {
    let delta = shift.cycles();
    let weight = SYNTHETIC_MASS * GRAVITY;
    let stance_at = |local| !gait.phases()[gait.phase_at(local)].is_swing();
    let mut clock = PhaseClock::new();
    let mut out = Vec::with_capacity(horizon);
    for t in 0..horizon as u64 {
        let phi = clock.phi();
        let stance = Foot::BOTH.map(|f| stance_at(phi + gait.theta(f) - delta));
        let n = stance.iter().filter(|&&s| s).count();
        let mut s = TrajectoryStep::zeroed(t, 6);
        s.pelvis_orientation = IDENTITY_QUAT;
        for f in Foot::BOTH {
            let (force, speed) = if stance[f.index()] {
                ([0.0, 0.0, weight / n as f64], [0.0; 3])
            } else {
                ([0.0; 3], SWING_SPEED)
            };
            match f {
                Foot::Left => {
                    s.foot_force_left = force;
                    s.foot_speed_left = speed;
                }
                Foot::Right => {
                    s.foot_force_right = force;
                    s.foot_speed_right = speed;
                }
            }
        }
        out.push(s);
        clock.advance(gait.period_steps());
    }
    out
}
