//! Whole-trajectory scoring: per-step breakdowns and discounted returns.

use std::collections::HashMap;
use std::io::Write;

use rand::Rng;
use serde::Serialize;

use super::compose::{compose, mode_parameters, RewardConfig, RewardMode, RewardTerms};
use super::types::{Commands, TrajectoryStep};
use super::RewardError;
use crate::gait_spec::{CoeffPair, Foot, Gait};
use crate::phase_math::CycleTime;

pub const DEFAULT_GAMMA: f64 = 0.99;

/// Cycle time advancing by `1/L` per control step, wrapping at 1.
///
/// Values land exactly on `k / L` while `L` is constant, so the same cycle
/// position always produces the same bits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseClock {
    phi: f64,
}

impl PhaseClock {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn phi(&self) -> CycleTime {
        CycleTime::new(self.phi)
    }

    pub fn advance(&mut self, period_steps: usize) {
        let l = period_steps as f64;
        let next = self.phi + 1.0 / l;
        let k = (next * l).round();
        let mut snapped = if (next * l - k).abs() < 1e-9 { k / l } else { next };
        if snapped >= 1.0 {
            snapped -= 1.0;
        }
        self.phi = snapped.max(0.0);
    }
}

/// Gait and command in force at one step.
#[derive(Debug, Clone, Copy)]
pub struct ScheduleEntry<'a> {
    pub gait: &'a Gait,
    pub cmd: Commands,
}

/// The same gait and command at every one of `len` steps.
pub fn constant_schedule(gait: &Gait, cmd: Commands, len: usize) -> Vec<ScheduleEntry<'_>> {
    vec![ScheduleEntry { gait, cmd }; len]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRecord {
    pub t: u64,
    pub phi: f64,
    pub terms: RewardTerms,
    /// `γᵗ · total`
    pub discounted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewardBreakdown {
    pub gamma: f64,
    pub mode: RewardMode,
    pub steps: Vec<StepRecord>,
    /// Undiscounted sum of per-step totals.
    pub total: f64,
    /// `Σ γᵗ R_t`
    pub discounted_return: f64,
}

/// Memoizes expected coefficients per (gait, cycle time).
#[derive(Default)]
pub(crate) struct CoeffCache<'a> {
    gaits: Vec<(&'a Gait, HashMap<u64, [CoeffPair; 2]>)>,
}

impl<'a> CoeffCache<'a> {
    pub(crate) fn get(&mut self, gait: &'a Gait, phi: CycleTime) -> [CoeffPair; 2] {
        let idx = match self.gaits.iter().position(|(g, _)| std::ptr::eq(*g, gait)) {
            Some(i) => i,
            None => {
                self.gaits.push((gait, HashMap::new()));
                self.gaits.len() - 1
            }
        };
        *self.gaits[idx]
            .1
            .entry(phi.value().to_bits())
            .or_insert_with(|| super::compose::coeffs_at(gait, phi))
    }
}

fn check_inputs(
    traj: &[TrajectoryStep],
    schedule: &[ScheduleEntry<'_>],
    gamma: f64,
) -> Result<(), RewardError> {
    if traj.len() != schedule.len() {
        return Err(RewardError::ScheduleLength {
            steps: traj.len(),
            schedule: schedule.len(),
        });
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(RewardError::Gamma(gamma));
    }
    for (s, e) in traj.iter().zip(schedule) {
        s.validate()?;
        e.cmd.validate()?;
    }
    Ok(())
}

/// Scores a trajectory step by step. The cycle time starts at 0 and advances
/// by `1/L` of the gait in force at each step.
pub fn score_trajectory(
    traj: &[TrajectoryStep],
    schedule: &[ScheduleEntry<'_>],
    gamma: f64,
    mode: RewardMode,
    cfg: &RewardConfig,
) -> Result<RewardBreakdown, RewardError> {
    check_inputs(traj, schedule, gamma)?;
    let mut cache = CoeffCache::default();
    let mut clock = PhaseClock::new();
    let mut discount = 1.0;
    let mut steps = Vec::with_capacity(traj.len());
    let (mut total, mut discounted_return) = (0.0, 0.0);
    for (step, entry) in traj.iter().zip(schedule) {
        let phi = clock.phi();
        let coeffs = cache.get(entry.gait, phi);
        let (w, om) = mode_parameters(mode, entry.gait, cfg);
        let terms = compose(entry.gait, coeffs, step, &entry.cmd, &w, om, cfg);
        let d = discount * terms.total;
        total += terms.total;
        discounted_return += d;
        steps.push(StepRecord {
            t: step.t,
            phi: phi.value(),
            terms,
            discounted: d,
        });
        discount *= gamma;
        clock.advance(entry.gait.period_steps());
    }
    Ok(RewardBreakdown {
        gamma,
        mode,
        steps,
        total,
        discounted_return,
    })
}

/// Discounted return of one episode where every phase indicator is a
/// Bernoulli draw instead of its expectation. Averaging over many draws
/// recovers [`score_trajectory`]'s return.
pub fn sampled_return<R: Rng + ?Sized>(
    traj: &[TrajectoryStep],
    schedule: &[ScheduleEntry<'_>],
    gamma: f64,
    mode: RewardMode,
    cfg: &RewardConfig,
    rng: &mut R,
) -> Result<f64, RewardError> {
    check_inputs(traj, schedule, gamma)?;
    let mut clock = PhaseClock::new();
    let mut discount = 1.0;
    let mut ret = 0.0;
    for (step, entry) in traj.iter().zip(schedule) {
        let gait = entry.gait;
        let phi = clock.phi();
        let mut coeffs = [CoeffPair::default(); 2];
        for foot in Foot::BOTH {
            let local = phi + gait.theta(foot);
            for (p, d) in gait.phases().iter().zip(gait.phase_intervals()) {
                // Separate indicator draws per channel.
                if d.sample_indicator(local, rng) {
                    coeffs[foot.index()].force += p.coeff_frc;
                }
                if d.sample_indicator(local, rng) {
                    coeffs[foot.index()].speed += p.coeff_spd;
                }
            }
        }
        let (w, om) = mode_parameters(mode, gait, cfg);
        ret += discount * compose(gait, coeffs, step, &entry.cmd, &w, om, cfg).total;
        discount *= gamma;
        clock.advance(gait.period_steps());
    }
    Ok(ret)
}

const COLUMNS: [&str; 25] = [
    "t",
    "phi",
    "q_frc_left",
    "q_frc_right",
    "q_spd_left",
    "q_spd_right",
    "q_xdot",
    "q_ydot",
    "q_orientation",
    "q_action_diff",
    "q_torque",
    "q_pelvis_acc",
    "c_frc_left",
    "c_frc_right",
    "c_spd_left",
    "c_spd_right",
    "omega",
    "r_bipedal",
    "r_cmd",
    "r_smooth",
    "q_hop_sym",
    "q_standing",
    "total",
    "discounted",
    "discounted_return",
];

impl RewardBreakdown {
    /// Comma-separated table: header, one row per step, and a `sum` footer
    /// holding the undiscounted total and the discounted return.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COLUMNS)?;
        let mut running = 0.0;
        for s in &self.steps {
            running += s.discounted;
            let k = &s.terms.kernels;
            let c = &s.terms.coeffs;
            let values = [
                s.phi,
                k.frc[0],
                k.frc[1],
                k.spd[0],
                k.spd[1],
                k.xdot,
                k.ydot,
                k.orientation,
                k.action_diff,
                k.torque,
                k.pelvis_acc,
                c[0].force,
                c[1].force,
                c[0].speed,
                c[1].speed,
                s.terms.omega,
                s.terms.bipedal,
                s.terms.cmd,
                s.terms.smooth,
                s.terms.hop_sym,
                s.terms.standing,
                s.terms.total,
                s.discounted,
                running,
            ];
            let mut row = vec![s.t.to_string()];
            row.extend(values.iter().map(|v| v.to_string()));
            w.write_record(&row)?;
        }
        let mut footer = vec![String::from("sum")];
        footer.extend(std::iter::repeat_n(String::new(), COLUMNS.len() - 4));
        footer.push(self.total.to_string());
        footer.push(String::new());
        footer.push(self.discounted_return.to_string());
        w.write_record(&footer)?;
        w.flush()?;
        Ok(())
    }
}
