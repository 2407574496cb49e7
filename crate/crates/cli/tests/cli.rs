use std::path::Path;
use std::process::{Command, Output};

use phasegait::gait_spec::{library_gait, GaitName};
use phasegait::reward::{
    constant_schedule, score_trajectory, write_trajectory, Commands, LoggedStep, RewardConfig,
    RewardMode,
};
use phasegait::toy_env::{synthetic_contact_trajectory, ContactShift};

fn phasegait(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasegait"))
        .args(args)
        .output()
        .expect("spawn phasegait")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(line: &str, key: &str) -> f64 {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing in {line}"))
        .parse()
        .unwrap()
}

fn table(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn show_prints_walk() {
    let o = phasegait(&["show", "walk"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("phases: 2"));
    assert!(s.contains("theta_left: 0\n") && s.contains("theta_right: 0.5\n"));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = phasegait(&["show", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown gait"));

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.toml");
    std::fs::write(&spec, "base = \"walk\"\nphases = [{ ratio = 0.7, c_frc = -1.0, c_spd = 0.0 }, { ratio = 0.6, c_frc = 0.0, c_spd = -1.0 }]\n").unwrap();
    let o = phasegait(&["show", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ratios sum to"), "{}", stderr(&o));

    assert_eq!(phasegait(&["verify", "--samples", "1000"]).status.code(), Some(2));
    assert_eq!(phasegait(&["plot-coeffs"]).status.code(), Some(2));
    assert_eq!(phasegait(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn plot_coeffs_tables() {
    let walk = table(&stdout(&phasegait(&["plot-coeffs", "--gait", "walk"])));
    assert_eq!(walk.len(), 512);
    assert!(walk.windows(2).all(|w| w[1][0] > w[0][0]));
    for i in 0..512 {
        assert!((walk[i][1] - walk[(i + 256) % 512][2]).abs() < 1e-6);
    }
    let hop = table(&stdout(&phasegait(&["plot-coeffs", "--gait", "hop", "--samples", "64"])));
    assert_eq!(hop.len(), 64);
    assert!(hop.iter().all(|r| r[1] == r[2] && r[3] == r[4]));
}

fn write_synthetic_walk(path: &Path) -> f64 {
    let gait = library_gait(GaitName::Walk, None).unwrap();
    let traj = synthetic_contact_trajectory(&gait, 84, ContactShift::Exact);
    let logged: Vec<LoggedStep> = traj
        .iter()
        .map(|s| LoggedStep { step: s.clone(), cmd: Commands::default() })
        .collect();
    write_trajectory(std::fs::File::create(path).unwrap(), &logged).unwrap();
    score_trajectory(&traj, &constant_schedule(&gait, Commands::default(), 84), 0.99, RewardMode::Single, &RewardConfig::default())
        .unwrap()
        .total
}

#[test]
fn score_matches_library_and_gamma_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("walk.jsonl");
    let expected = write_synthetic_walk(&input);
    let out = dir.path().join("breakdown.csv");
    let o = phasegait(&["score", input.to_str().unwrap(), "--gait", "walk", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!((field(&stdout(&o), "total") - expected).abs() < 1e-9);
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 86);

    let o = phasegait(&["score", input.to_str().unwrap(), "--gait", "walk", "--gamma", "0", "--out", out.to_str().unwrap()]);
    let text = std::fs::read_to_string(&out).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "total").unwrap();
    let first_total: f64 = first[col].parse().unwrap();
    assert_eq!(field(&stdout(&o), "discounted_return"), first_total);
}

#[test]
fn malformed_trajectory_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.jsonl");
    write_synthetic_walk(&input);
    let mut text = std::fs::read_to_string(&input).unwrap();
    text.push_str("{\"t\": 84, \"frc_l\": [1, 2]}\n");
    std::fs::write(&input, text).unwrap();
    let o = phasegait(&["score", input.to_str().unwrap(), "--gait", "walk"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 85"), "{}", stderr(&o));
}

#[test]
fn verify_is_reproducible() {
    let a = phasegait(&["verify", "--samples", "100000", "--kappa", "16", "--grid", "16", "--seed", "2"]);
    let b = phasegait(&["verify", "--samples", "100000", "--kappa", "16", "--grid", "16", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("PASS"));
}

#[test]
fn rollout_round_trips_through_score() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("stand.jsonl");
    let o = phasegait(&["rollout", "--gait", "stand", "--horizon", "160", "--out", traj.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let line = stdout(&o);
    assert!(line.contains("steps=160") && line.contains("fell=false"));
    let s = phasegait(&["score", traj.to_str().unwrap(), "--gait", "stand"]);
    let rescored = stdout(&s);
    assert!((field(&line, "discounted_return") - field(&rescored, "discounted_return")).abs() < 1e-9);

    let one = dir.path().join("one.jsonl");
    phasegait(&["rollout", "--gait", "hop", "--horizon", "1", "--out", one.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&one).unwrap().lines().count(), 1);
}

#[test]
fn train_with_zero_generations_saves_initial_policy() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = phasegait(&["train", "--gait", "walk", "--generations", "0", "--horizon", "60", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let policy = std::fs::read_to_string(out.join("policy.txt")).unwrap();
    assert_eq!(policy.lines().count(), 32);
    assert!(policy.lines().all(|l| l.ends_with("= 0.0")));
    let history = std::fs::read_to_string(out.join("history.csv")).unwrap();
    assert_eq!(history.lines().count(), 2);
    assert!(out.join("grf.csv").exists());
}
