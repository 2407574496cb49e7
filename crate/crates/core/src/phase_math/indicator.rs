//! Expected value of a phase indicator whose start and end times are Von
//! Mises variables.
//!
//! The query angle `2πφ` is lifted once per interval, to the representative
//! nearest the interval midpoint. Each variable's CDF is then read on its own
//! branch, extended by 0 below and 1 above it. For intervals shorter than half
//! a cycle this agrees with lifting onto each mean separately up to the
//! negligible branch tails; for longer intervals it is the only lifting that
//! keeps `φ` inside the interval it belongs to.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::von_mises::wrap_pi;
use super::{MathError, VonMisesParams};

/// Normalized position in a gait cycle, always in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct CycleTime(f64);

impl CycleTime {
    pub const ZERO: CycleTime = CycleTime(0.0);

    /// Wraps any finite value modulo 1.
    pub fn new(phi: f64) -> Self {
        let r = phi.rem_euclid(1.0);
        CycleTime(if r >= 1.0 { 0.0 } else { r })
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn radians(self) -> f64 {
        TAU * self.0
    }
}

impl Add<f64> for CycleTime {
    type Output = CycleTime;
    fn add(self, rhs: f64) -> CycleTime {
        CycleTime::new(self.0 + rhs)
    }
}

impl Add for CycleTime {
    type Output = CycleTime;
    fn add(self, rhs: CycleTime) -> CycleTime {
        self + rhs.0
    }
}

impl Sub<f64> for CycleTime {
    type Output = CycleTime;
    fn sub(self, rhs: f64) -> CycleTime {
        CycleTime::new(self.0 - rhs)
    }
}

impl fmt::Display for CycleTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Start (`A`) and end (`B`) variables of one phase interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorDistribution {
    start: VonMisesParams,
    end: VonMisesParams,
}

impl IndicatorDistribution {
    pub fn new(start: VonMisesParams, end: VonMisesParams) -> Result<Self, MathError> {
        if start.kappa() != end.kappa() {
            return Err(MathError::KappaMismatch(start.kappa(), end.kappa()));
        }
        Ok(Self { start, end })
    }

    /// Interval `[start, end]` given in cycles.
    pub fn from_cycles(start: f64, end: f64, kappa: f64) -> Result<Self, MathError> {
        Self::new(
            VonMisesParams::new(TAU * start, kappa)?,
            VonMisesParams::new(TAU * end, kappa)?,
        )
    }

    pub fn start(&self) -> &VonMisesParams {
        &self.start
    }

    pub fn end(&self) -> &VonMisesParams {
        &self.end
    }

    pub fn kappa(&self) -> f64 {
        self.start.kappa()
    }

    /// Angular length of the interval in `[0, 2π)`.
    pub fn span(&self) -> f64 {
        (self.end.mean() - self.start.mean()).rem_euclid(TAU)
    }

    /// Offsets of the lifted query from the start and end means.
    fn lifted_offsets(&self, angle: f64) -> (f64, f64) {
        let span = self.span();
        let mid = self.start.mean() + 0.5 * span;
        let rel = wrap_pi(angle - mid);
        (rel + 0.5 * span, rel - 0.5 * span)
    }

    /// One Bernoulli draw of `I(φ)`.
    pub fn sample_indicator<R: Rng + ?Sized>(&self, phi: CycleTime, rng: &mut R) -> bool {
        let (ds, de) = self.lifted_offsets(phi.radians());
        let a = self.start.sample_offset(rng);
        let b = self.end.sample_offset(rng);
        a < ds && de < b
    }
}

/// `E[I(φ)] = P(A < 2πφ) · (1 − P(B < 2πφ))`.
pub fn indicator_expectation(phi: CycleTime, dist: &IndicatorDistribution) -> f64 {
    let (ds, de) = dist.lifted_offsets(phi.radians());
    let p_started = dist.start.cdf_at_offset(ds);
    if p_started == 0.0 {
        return 0.0;
    }
    p_started * (1.0 - dist.end.cdf_at_offset(de))
}

/// Monte Carlo estimate of `P(A < 2πφ < B)` from `samples` independent
/// `(A, B)` draws. Deterministic in `seed`.
pub fn mc_indicator_oracle(
    phi: CycleTime,
    dist: &IndicatorDistribution,
    samples: u64,
    seed: u64,
) -> Result<f64, MathError> {
    Ok(mc_indicator_grid(&[phi], dist, samples, seed)?[0])
}

/// [`mc_indicator_oracle`] evaluated at every point of `phis` against one
/// shared set of draws. Each entry equals the single-point oracle with the
/// same seed, because the draws do not depend on `φ`.
pub fn mc_indicator_grid(
    phis: &[CycleTime],
    dist: &IndicatorDistribution,
    samples: u64,
    seed: u64,
) -> Result<Vec<f64>, MathError> {
    if samples == 0 {
        return Err(MathError::NoSamples);
    }
    let offsets: Vec<(f64, f64)> = phis
        .iter()
        .map(|p| dist.lifted_offsets(p.radians()))
        .collect();
    let mut hits = vec![0u64; phis.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = dist.start.sample_offset(&mut rng);
        let b = dist.end.sample_offset(&mut rng);
        for (h, &(ds, de)) in hits.iter_mut().zip(&offsets) {
            if a < ds && de < b {
                *h += 1;
            }
        }
    }
    Ok(hits
        .into_iter()
        .map(|h| h as f64 / samples as f64)
        .collect())
}

/// Crisp indicator `1{a < φ < b}` of the interval in cycles, for limit checks.
pub fn crisp_indicator(phi: CycleTime, start: f64, end: f64) -> bool {
    let len = (end - start).rem_euclid(1.0);
    let rel = (phi.value() - start).rem_euclid(1.0);
    rel > 0.0 && rel < len
}
