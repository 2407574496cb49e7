use super::*;
use crate::gait_spec::{library_gait, GaitName};
use crate::toy_env::{synthetic_contact_trajectory, ContactShift};

fn small_cfg() -> EsConfig {
    EsConfig {
        population: 6,
        parents: 2,
        generations: 3,
        horizon: 40,
        episodes: 2,
        seed: 5,
        ..EsConfig::default()
    }
}

#[test]
fn synthetic_walk_pattern() {
    let g = library_gait(GaitName::Walk, None).unwrap();
    let traj = synthetic_contact_trajectory(&g, 28 * 4, ContactShift::Exact);
    let p = contact_pattern(&traj, 28, 33.0 * 9.81).unwrap();
    assert!((p.phase_difference.unwrap() - 0.5).abs() < 1.0 / 28.0, "{p:?}");
    for d in p.duty_factor {
        assert!((d - 0.6).abs() < 1.0 / 28.0 + 1e-12, "{d}");
    }
}

#[test]
fn synthetic_hop_pattern() {
    let g = library_gait(GaitName::Hop, None).unwrap();
    let traj = synthetic_contact_trajectory(&g, 28 * 3, ContactShift::Exact);
    let p = contact_pattern(&traj, 28, 33.0 * 9.81).unwrap();
    assert_eq!(p.phase_difference, Some(0.0));
    assert!(p.flight_fraction > 0.3);
}

#[test]
fn short_trajectories_are_rejected() {
    let g = library_gait(GaitName::Walk, None).unwrap();
    let traj = synthetic_contact_trajectory(&g, 50, ContactShift::Exact);
    assert!(matches!(contact_pattern(&traj, 28, 300.0), Err(SearchError::TooShort { .. })));
    assert!(grf_coefficient_report(&traj, &g).is_err());
}

#[test]
fn grf_report_shape_and_swing_bins() {
    let g = library_gait(GaitName::Walk, None).unwrap();
    let traj = synthetic_contact_trajectory(&g, 28 * 4, ContactShift::Exact);
    let r = grf_coefficient_report(&traj, &g).unwrap();
    assert_eq!(r.rows.len(), 64);
    assert_eq!(r.deep_swing_grf(), Some(0.0));
    assert!(r.deep_stance_grf().unwrap() > 100.0);
    let empty = r.rows.iter().filter(|row| row.count == 0).count();
    assert!(r.rows.iter().filter(|row| row.count == 0).all(|row| row.mean_grf.is_nan()));
    assert_eq!(empty, 2 * (32 - 28));
}

#[test]
fn standing_evaluation_is_near_maximal() {
    let g = library_gait(GaitName::Stand, None).unwrap();
    let cfg = EsConfig {
        horizon: 100,
        ..EsConfig::default()
    };
    let seeds = episode_seeds(1, 0, 4);
    let f = evaluate(&PolicyParams::zeros(), &g, Commands::default(), &cfg, &seeds);
    let ceiling = (1.0 - cfg.gamma.powi(100)) / (1.0 - cfg.gamma);
    assert!(f > 0.7 * ceiling && f <= ceiling, "{f} vs {ceiling}");
    assert_eq!(f, evaluate(&PolicyParams::zeros(), &g, Commands::default(), &cfg, &seeds));
}

#[test]
fn zero_generations_return_initial_params() {
    let g = library_gait(GaitName::Hop, None).unwrap();
    let init = PolicyParams::from_vec((0..POLICY_DIM).map(|i| i as f64 * 1e-3).collect()).unwrap();
    let cfg = EsConfig {
        generations: 0,
        ..small_cfg()
    };
    let r = optimize(&init, &g, Commands::default(), &cfg).unwrap();
    assert_eq!(r.best, init);
    assert_eq!(r.history.len(), 1);
}

#[test]
fn best_ever_is_monotone_and_deterministic() {
    let g = library_gait(GaitName::Hop, None).unwrap();
    let a = optimize(&PolicyParams::zeros(), &g, Commands::default(), &small_cfg()).unwrap();
    assert_eq!(a.history.len(), 4);
    assert!(a.history.windows(2).all(|w| w[1].best_ever >= w[0].best_ever));
    assert_eq!(a.history.last().unwrap().best_ever, a.best_fitness);
    let b = optimize(&PolicyParams::zeros(), &g, Commands::default(), &small_cfg()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn invalid_configs_are_rejected() {
    let g = library_gait(GaitName::Hop, None).unwrap();
    for cfg in [
        EsConfig { parents: 6, ..small_cfg() },
        EsConfig { parents: 0, ..small_cfg() },
        EsConfig { sigma0: 0.0, ..small_cfg() },
    ] {
        assert!(matches!(
            optimize(&PolicyParams::zeros(), &g, Commands::default(), &cfg),
            Err(SearchError::Config(_))
        ));
    }
}

#[test]
fn seeds_are_shared_within_a_generation() {
    assert_eq!(episode_seeds(3, 7, 4), episode_seeds(3, 7, 4));
    assert_ne!(episode_seeds(3, 7, 4), episode_seeds(3, 8, 4));
}
