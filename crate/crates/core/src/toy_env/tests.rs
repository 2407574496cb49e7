use super::*;
use crate::gait_spec::{library_gait, GaitName};
use crate::phase_math::CycleTime;
use crate::reward::bipedal_reward;

fn stand() -> Gait {
    library_gait(GaitName::Stand, None).unwrap()
}

fn settle(params: &ToyParams, cfg: &RandomizationConfig, seconds: f64) -> (ToyBipedState, TrajectoryStep) {
    let mut s = ToyBipedState::standing(params);
    let a = ToyAction::neutral(params);
    let n = (seconds / params.control_dt).round() as u64;
    let mut last = None;
    for t in 0..n {
        let (next, m) = step(&s, &a, &a.to_vec(), cfg, params, params.control_dt, t).unwrap();
        s = next;
        last = Some(m);
    }
    (s, last.unwrap())
}

#[test]
fn nominal_reset_is_standing() {
    let p = ToyParams::default();
    let (s, c) = reset(&p, 11, false);
    assert_eq!(c, RandomizationConfig::nominal());
    assert_eq!(s.pelvis_pos, [0.0, 0.9]);
    assert_eq!(s.feet[0].pos[1], 0.0);
    assert_eq!(reset(&p, 5, true), reset(&p, 5, true));
}

#[test]
fn static_load_splits_between_feet() {
    let p = ToyParams::default();
    for cfg in [RandomizationConfig::nominal(), RandomizationConfig::from_seed(2)] {
        let (_, m) = settle(&p, &cfg, 1.0);
        let w = p.body_weight(&cfg);
        let (s, c) = cfg.ground_slope.sin_cos();
        for f in [m.foot_force_left, m.foot_force_right] {
            let normal = -s * f[0] + c * f[2];
            assert!((normal / (w / 2.0) - 1.0).abs() < 0.02, "{normal} vs {}", w / 2.0);
        }
    }
}

#[test]
fn airborne_foot_has_no_force() {
    let p = ToyParams::default();
    let cfg = RandomizationConfig::nominal();
    let mut s = ToyBipedState::standing(&p);
    let mut a = ToyAction::neutral(&p);
    a.targets[0][1] = -0.4;
    for t in 0..40 {
        let (next, m) = step(&s, &a, &[], &cfg, &p, p.control_dt, t).unwrap();
        s = next;
        if s.feet[0].pos[1] > 0.0 && t > 5 {
            assert_eq!(m.foot_force_left, [0.0; 3]);
        }
    }
    assert!(s.feet[0].pos[1] > 0.1);
}

#[test]
fn drop_apexes_decay() {
    let p = ToyParams::default();
    let cfg = RandomizationConfig::nominal();
    let mut s = ToyBipedState::standing(&p);
    s.pelvis_pos[1] += 0.05;
    for f in &mut s.feet {
        f.pos[1] += 0.05;
    }
    let a = ToyAction::neutral(&p);
    let mut fine = p;
    fine.substeps = 4;
    let dt = p.control_dt / 10.0;
    let mut z = Vec::new();
    for t in 0..400 {
        s = step(&s, &a, &[], &cfg, &fine, dt, t).unwrap().0;
        z.push(s.pelvis_pos[1]);
    }
    let apex: Vec<f64> = z.windows(3).filter(|w| w[1] > w[0] && w[1] >= w[2]).map(|w| w[1]).collect();
    assert!(!apex.is_empty());
    assert!(apex[0] < 0.95);
    assert!(apex.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{apex:?}");
}

#[test]
fn contact_force_obeys_friction_and_sign() {
    let c = ContactParams::default();
    for seed in 0..50 {
        let cfg = RandomizationConfig::from_seed(seed);
        for (pos, vel) in [
            ([0.0, -0.01], [2.0, -1.0]),
            ([0.3, -0.002], [-5.0, 3.0]),
            ([0.0, 0.01], [0.0, -1.0]),
            ([0.0, -0.005], [0.0, 4.0]),
        ] {
            let (f, pen) = dynamics::contact_force(pos, vel, &c, &cfg);
            let (s, co) = cfg.ground_slope.sin_cos();
            let n = -s * f[0] + co * f[1];
            let t = co * f[0] + s * f[1];
            assert!(n >= 0.0);
            if n > 0.0 {
                assert!(pen > 0.0);
            }
            assert!(t.abs() <= cfg.ground_friction * n + 1e-9);
        }
    }
}

#[test]
fn steps_are_fully_populated() {
    let g = library_gait(GaitName::Walk, None).unwrap();
    let r = rollout(&ZeroPolicy, &g, Commands::default(), &RolloutConfig::new(20, 4)).unwrap();
    let m = r.steps.last().unwrap();
    m.validate().unwrap();
    assert_eq!(m.action.len(), 6);
    assert_eq!(m.joint_torques.len(), 4);
    assert!(m.foot_force_left[2] > 0.0 && m.foot_position_left[2].abs() > 0.0);
    assert!(m.pelvis_acceleration[2] != 0.0 && m.pelvis_velocity[0] != 0.0);
    assert!(m.pelvis_rot_velocity[1] != 0.0);
    assert_eq!(m.pelvis_velocity[1], 0.0);
}

#[test]
fn zero_policy_stands_still() {
    let r = rollout(&ZeroPolicy, &stand(), Commands::default(), &RolloutConfig::new(200, 9)).unwrap();
    assert_eq!(r.termination, Termination::Horizon);
    assert_eq!(r.steps.len(), 200);
    let v = r.steps.last().unwrap().pelvis_velocity;
    assert!(v[0].abs() < 0.05, "{v:?}");
}

#[test]
fn single_step_horizon() {
    let r = rollout(&ZeroPolicy, &stand(), Commands::default(), &RolloutConfig::new(1, 0)).unwrap();
    assert_eq!(r.steps.len(), 1);
}

#[test]
fn rollouts_are_bitwise_deterministic() {
    let g = library_gait(GaitName::Run, None).unwrap();
    let mut cfg = RolloutConfig::new(80, 21);
    cfg.params.rate_jitter = 0.1;
    let a = rollout(&ZeroPolicy, &g, Commands::default(), &cfg).unwrap();
    let b = rollout(&ZeroPolicy, &g, Commands::default(), &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn crouching_counts_as_fall() {
    struct Crouch;
    impl Policy for Crouch {
        fn act(&self, _: &PolicyInput, p: &ToyParams) -> ToyAction {
            let mut a = ToyAction::neutral(p);
            a.targets = [[0.0, -0.2]; 2];
            a
        }
    }
    let r = rollout(&Crouch, &stand(), Commands::default(), &RolloutConfig::new(200, 1)).unwrap();
    assert!(r.fell());
    assert!(r.steps.len() < 200);
}

fn bipedal_total(g: &Gait, steps: &[TrajectoryStep]) -> f64 {
    let l = g.period_steps() as f64;
    steps
        .iter()
        .map(|s| bipedal_reward(g, CycleTime::new(s.t as f64 / l), s, &Commands::default()).unwrap())
        .sum()
}

#[test]
fn misaligned_contacts_score_lower() {
    let g = library_gait(GaitName::Walk, None).unwrap();
    let exact = synthetic_contact_trajectory(&g, 56, ContactShift::Exact);
    let shifted = synthetic_contact_trajectory(&g, 56, ContactShift::Shifted(0.25));
    let e = bipedal_total(&g, &exact);
    assert!(e / 56.0 > -0.25, "{e}");
    assert!(bipedal_total(&g, &shifted) < e);
}

#[test]
fn hop_contacts_are_simultaneous() {
    let g = library_gait(GaitName::Hop, None).unwrap();
    for s in synthetic_contact_trajectory(&g, 56, ContactShift::Exact) {
        assert_eq!(s.foot_force_left, s.foot_force_right);
    }
}
