use serde::Serialize;

use super::SearchError;
use crate::gait_spec::{Channel, Foot, Gait};
use crate::phase_math::CycleTime;
use crate::reward::{norm, PhaseClock, TrajectoryStep};

pub const CONTACT_THRESHOLD: f64 = 0.05;
pub const GRF_BINS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContactPattern {
    pub duty_factor: [f64; 2],
    /// Circular distance between mean contact-onset phases, in [0, 0.5].
    /// `None` when a foot never touches down.
    pub phase_difference: Option<f64>,
    /// Fraction of steps with both feet airborne.
    pub flight_fraction: f64,
}

fn cycle_phases(n: usize, period: usize) -> Vec<CycleTime> {
    let mut clock = PhaseClock::new();
    (0..n)
        .map(|_| {
            let p = clock.phi();
            clock.advance(period);
            p
        })
        .collect()
}

fn whole_cycles(traj: &[TrajectoryStep], period: usize) -> Result<usize, SearchError> {
    let cycles = traj.len() / period.max(1);
    if period == 0 || cycles < 2 {
        return Err(SearchError::TooShort {
            steps: traj.len(),
            period,
        });
    }
    Ok(cycles * period)
}

fn circular_mean(phases: &[f64]) -> Option<f64> {
    if phases.is_empty() {
        return None;
    }
    let (s, c) = phases.iter().fold((0.0, 0.0), |(s, c), p| {
        let (ps, pc) = (std::f64::consts::TAU * p).sin_cos();
        (s + ps, c + pc)
    });
    Some((s.atan2(c) / std::f64::consts::TAU).rem_euclid(1.0))
}

/// Contact statistics over the whole cycles of `traj`, which must start at
/// cycle time 0. A foot touches the ground when its force exceeds
/// [`CONTACT_THRESHOLD`] of `body_weight`.
pub fn contact_pattern(
    traj: &[TrajectoryStep],
    period: usize,
    body_weight: f64,
) -> Result<ContactPattern, SearchError> {
    let n = whole_cycles(traj, period)?;
    let traj = &traj[..n];
    let phases = cycle_phases(n, period);
    let limit = CONTACT_THRESHOLD * body_weight;
    let contact: Vec<[bool; 2]> = traj
        .iter()
        .map(|s| Foot::BOTH.map(|f| norm(s.foot_force(f)) > limit))
        .collect();

    let mut duty = [0.0; 2];
    let mut onset = [None; 2];
    for f in 0..2 {
        duty[f] = contact.iter().filter(|c| c[f]).count() as f64 / n as f64;
        let starts: Vec<f64> = (1..n)
            .filter(|&t| contact[t][f] && !contact[t - 1][f])
            .map(|t| phases[t].value())
            .collect();
        onset[f] = circular_mean(&starts);
    }
    let phase_difference = match onset {
        [Some(a), Some(b)] => {
            let d = (a - b).rem_euclid(1.0);
            Some(d.min(1.0 - d))
        }
        _ => None,
    };
    let flight = contact.iter().filter(|c| !c[0] && !c[1]).count() as f64 / n as f64;
    Ok(ContactPattern {
        duty_factor: duty,
        phase_difference,
        flight_fraction: flight,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrfRow {
    pub foot: &'static str,
    pub bin: usize,
    pub phi: f64,
    pub count: usize,
    /// Mean force magnitude, N. NaN for an empty bin.
    pub mean_grf: f64,
    pub expected_c_frc: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrfReport {
    pub rows: Vec<GrfRow>,
}

impl GrfReport {
    /// Count-weighted mean GRF over rows whose expected coefficient passes `keep`.
    pub fn mean_where(&self, keep: impl Fn(f64) -> bool) -> Option<f64> {
        let (s, n) = self
            .rows
            .iter()
            .filter(|r| r.count > 0 && keep(r.expected_c_frc))
            .fold((0.0, 0usize), |(s, n), r| (s + r.mean_grf * r.count as f64, n + r.count));
        (n > 0).then(|| s / n as f64)
    }

    /// Mean GRF in deep-swing bins (`E[C_frc] ≤ −0.9`).
    pub fn deep_swing_grf(&self) -> Option<f64> {
        self.mean_where(|c| c <= -0.9)
    }

    /// Mean GRF in deep-stance bins (`E[C_frc] ≥ −0.1`).
    pub fn deep_stance_grf(&self) -> Option<f64> {
        self.mean_where(|c| c >= -0.1)
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Mean GRF per foot per cycle-time bin next to the expected force
/// coefficient at the bin center.
pub fn grf_coefficient_report(traj: &[TrajectoryStep], gait: &Gait) -> Result<GrfReport, SearchError> {
    let period = gait.period_steps();
    let n = whole_cycles(traj, period)?;
    let phases = cycle_phases(n, period);
    let mut rows = Vec::with_capacity(2 * GRF_BINS);
    for foot in Foot::BOTH {
        let mut sum = [0.0; GRF_BINS];
        let mut count = [0usize; GRF_BINS];
        for (s, p) in traj[..n].iter().zip(&phases) {
            let b = ((p.value() * GRF_BINS as f64) as usize).min(GRF_BINS - 1);
            sum[b] += norm(s.foot_force(foot));
            count[b] += 1;
        }
        for b in 0..GRF_BINS {
            let phi = (b as f64 + 0.5) / GRF_BINS as f64;
            rows.push(GrfRow {
                foot: match foot {
                    Foot::Left => "left",
                    Foot::Right => "right",
                },
                bin: b,
                phi,
                count: count[b],
                mean_grf: if count[b] > 0 { sum[b] / count[b] as f64 } else { f64::NAN },
                expected_c_frc: gait.coeff_expectation(Channel::Force, foot, CycleTime::new(phi)),
            });
        }
    }
    Ok(GrfReport { rows })
}
