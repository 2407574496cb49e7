//! Gait specifications: phase sequences with per-channel coefficients, per-foot
//! cycle offsets, and the compiled coefficient curves `E[C_frc]`, `E[C_spd]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::phase_math::{indicator_expectation, CycleTime, IndicatorDistribution, MathError};

/// Concentration used when a spec does not set one.
pub const DEFAULT_KAPPA: f64 = 16.0;
/// Control steps per cycle: 0.7 s at a 40 Hz policy rate.
pub const DEFAULT_PERIOD_STEPS: usize = 28;

const RATIO_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Foot {
    Left,
    Right,
}

impl Foot {
    pub const BOTH: [Foot; 2] = [Foot::Left, Foot::Right];

    pub fn index(self) -> usize {
        match self {
            Foot::Left => 0,
            Foot::Right => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Force,
    Speed,
}

/// One phase of the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseDef {
    pub ratio: f64,
    #[serde(rename = "c_frc")]
    pub coeff_frc: f64,
    #[serde(rename = "c_spd")]
    pub coeff_spd: f64,
}

impl PhaseDef {
    /// Foot airborne: penalize force, ignore speed.
    pub fn swing(ratio: f64) -> Self {
        Self {
            ratio,
            coeff_frc: -1.0,
            coeff_spd: 0.0,
        }
    }

    /// Foot planted: penalize speed, ignore force.
    pub fn stance(ratio: f64) -> Self {
        Self {
            ratio,
            coeff_frc: 0.0,
            coeff_spd: -1.0,
        }
    }

    /// A phase is a swing phase when force is penalized harder than speed.
    pub fn is_swing(&self) -> bool {
        self.coeff_frc < self.coeff_spd
    }

    pub fn coeff(&self, channel: Channel) -> f64 {
        match channel {
            Channel::Force => self.coeff_frc,
            Channel::Speed => self.coeff_spd,
        }
    }
}

/// Unvalidated gait description, as read from a file or built in code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaitSpec {
    pub name: String,
    pub kappa: f64,
    pub period_steps: usize,
    pub theta_left: f64,
    pub theta_right: f64,
    pub phases: Vec<PhaseDef>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("spec has no phases")]
    NoPhases,
    #[error("phase {index}: ratio {ratio} is outside (0, 1)")]
    Ratio { index: usize, ratio: f64 },
    #[error("ratios sum to {0}")]
    RatioSum(f64),
    #[error("phase {index}: coefficients must be finite")]
    Coefficient { index: usize },
    #[error("period_steps must be at least 2, got {0}")]
    Period(usize),
    #[error("kappa must be finite and > 0, got {0}")]
    Kappa(f64),
    #[error("{0} must be finite")]
    Offset(&'static str),
}

/// Every problem found in one spec.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl GaitSpec {
    /// Checks every invariant, normalizes offsets into `[0, 1)` and compiles
    /// the phase intervals.
    pub fn validate(&self) -> Result<Gait, ValidationErrors> {
        let mut errors = Vec::new();
        if self.phases.is_empty() {
            errors.push(ValidationError::NoPhases);
        }
        for (index, p) in self.phases.iter().enumerate() {
            if !(p.ratio > 0.0 && p.ratio < 1.0) {
                errors.push(ValidationError::Ratio {
                    index,
                    ratio: p.ratio,
                });
            }
            if !(p.coeff_frc.is_finite() && p.coeff_spd.is_finite()) {
                errors.push(ValidationError::Coefficient { index });
            }
        }
        let sum: f64 = self.phases.iter().map(|p| p.ratio).sum();
        if !self.phases.is_empty() && (sum - 1.0).abs() > RATIO_SUM_TOL {
            errors.push(ValidationError::RatioSum(sum));
        }
        if self.period_steps < 2 {
            errors.push(ValidationError::Period(self.period_steps));
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            errors.push(ValidationError::Kappa(self.kappa));
        }
        if !self.theta_left.is_finite() {
            errors.push(ValidationError::Offset("theta_left"));
        }
        if !self.theta_right.is_finite() {
            errors.push(ValidationError::Offset("theta_right"));
        }
        if !errors.is_empty() {
            return Err(ValidationErrors(errors));
        }

        let mut spec = self.clone();
        spec.theta_left = CycleTime::new(spec.theta_left).value();
        spec.theta_right = CycleTime::new(spec.theta_right).value();

        let mut boundaries = Vec::with_capacity(spec.phases.len() + 1);
        let mut acc = 0.0;
        boundaries.push(0.0);
        for p in &spec.phases {
            acc += p.ratio;
            boundaries.push(acc);
        }
        // Close the cycle exactly.
        *boundaries.last_mut().expect("nonempty") = 1.0;

        let intervals = boundaries
            .windows(2)
            .map(|w| IndicatorDistribution::from_cycles(w[0], w[1], spec.kappa))
            .collect::<Result<Vec<_>, MathError>>()
            .map_err(|_| ValidationErrors(vec![ValidationError::Kappa(spec.kappa)]))?;

        Ok(Gait {
            spec,
            boundaries,
            intervals,
        })
    }

    /// TOML text in the gait spec file format.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("gait spec serializes")
    }
}

/// A validated, immutable gait specification.
#[derive(Debug, Clone, PartialEq)]
pub struct Gait {
    spec: GaitSpec,
    boundaries: Vec<f64>,
    intervals: Vec<IndicatorDistribution>,
}

impl Gait {
    pub fn spec(&self) -> &GaitSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn phases(&self) -> &[PhaseDef] {
        &self.spec.phases
    }

    pub fn kappa(&self) -> f64 {
        self.spec.kappa
    }

    pub fn period_steps(&self) -> usize {
        self.spec.period_steps
    }

    pub fn theta(&self, foot: Foot) -> f64 {
        match foot {
            Foot::Left => self.spec.theta_left,
            Foot::Right => self.spec.theta_right,
        }
    }

    /// Phase boundaries in cycles: `0 = b₀ < b₁ < … < bₙ = 1`.
    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Start/end distributions of each phase, in phase order. Both channels
    /// share these intervals.
    pub fn phase_intervals(&self) -> &[IndicatorDistribution] {
        &self.intervals
    }

    /// Total ratio of the swing phases.
    pub fn swing_ratio(&self) -> f64 {
        self.spec
            .phases
            .iter()
            .filter(|p| p.is_swing())
            .map(|p| p.ratio)
            .sum()
    }

    /// `E[C_channel(φ + θ_foot)]`.
    pub fn coeff_expectation(&self, channel: Channel, foot: Foot, phi: CycleTime) -> f64 {
        let local = phi + self.theta(foot);
        self.spec
            .phases
            .iter()
            .zip(&self.intervals)
            .map(|(p, d)| {
                let c = p.coeff(channel);
                if c == 0.0 {
                    0.0
                } else {
                    c * indicator_expectation(local, d)
                }
            })
            .sum()
    }

    /// Force and speed curves for one foot, sharing the indicator evaluations.
    pub fn coeff_pair(&self, foot: Foot, phi: CycleTime) -> CoeffPair {
        let local = phi + self.theta(foot);
        let mut out = CoeffPair::default();
        for (p, d) in self.spec.phases.iter().zip(&self.intervals) {
            if p.coeff_frc == 0.0 && p.coeff_spd == 0.0 {
                continue;
            }
            let e = indicator_expectation(local, d);
            out.force += p.coeff_frc * e;
            out.speed += p.coeff_spd * e;
        }
        out
    }

    /// Policy-facing encoding at control step `t`.
    pub fn observation(&self, t: u64) -> GaitObservation {
        let l = self.spec.period_steps as f64;
        let clock = |theta: f64| {
            let steps = (t % self.spec.period_steps as u64) as f64 + theta * l;
            (std::f64::consts::TAU * steps / l).sin()
        };
        GaitObservation {
            ratios: self.spec.phases.iter().map(|p| p.ratio).collect(),
            clocks: [clock(self.spec.theta_left), clock(self.spec.theta_right)],
        }
    }

    /// The phase containing `phi` under crisp boundaries.
    pub fn phase_at(&self, phi: CycleTime) -> usize {
        let x = phi.value();
        self.boundaries
            .windows(2)
            .position(|w| x >= w[0] && x < w[1])
            .unwrap_or(self.spec.phases.len() - 1)
    }
}

/// Expected force and speed coefficients of one foot at one cycle time.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CoeffPair {
    pub force: f64,
    pub speed: f64,
}

/// Clock inputs and ratio vector handed to a policy.
#[derive(Debug, Clone, PartialEq)]
pub struct GaitObservation {
    pub ratios: Vec<f64>,
    pub clocks: [f64; 2],
}

/// Named entries of the built-in gait library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GaitName {
    Stand,
    Walk,
    Run,
    Hop,
    Gallop,
    Skip,
}

impl GaitName {
    pub const ALL: [GaitName; 6] = [
        GaitName::Stand,
        GaitName::Walk,
        GaitName::Run,
        GaitName::Hop,
        GaitName::Gallop,
        GaitName::Skip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GaitName::Stand => "stand",
            GaitName::Walk => "walk",
            GaitName::Run => "run",
            GaitName::Hop => "hop",
            GaitName::Gallop => "gallop",
            GaitName::Skip => "skip",
        }
    }
}

impl fmt::Display for GaitName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown gait '{0}' (expected one of stand, walk, run, hop, gallop, skip)")]
pub struct UnknownGait(pub String);

impl FromStr for GaitName {
    type Err = UnknownGait;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaitName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| UnknownGait(s.to_string()))
    }
}

/// Field-by-field replacements for a library gait.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaitOverrides {
    pub name: Option<String>,
    pub kappa: Option<f64>,
    pub period_steps: Option<usize>,
    pub theta_left: Option<f64>,
    pub theta_right: Option<f64>,
    /// Swing ratio of a two-phase gait; the stance phase takes the rest.
    pub swing_ratio: Option<f64>,
    pub phases: Option<Vec<PhaseDef>>,
}

impl GaitOverrides {
    pub fn apply(&self, spec: &mut GaitSpec) {
        if let Some(n) = &self.name {
            spec.name = n.clone();
        }
        if let Some(k) = self.kappa {
            spec.kappa = k;
        }
        if let Some(l) = self.period_steps {
            spec.period_steps = l;
        }
        if let Some(t) = self.theta_left {
            spec.theta_left = t;
        }
        if let Some(t) = self.theta_right {
            spec.theta_right = t;
        }
        if let Some(r) = self.swing_ratio {
            if spec.phases.len() == 2 {
                spec.phases = vec![PhaseDef::swing(r), PhaseDef::stance(1.0 - r)];
            }
        }
        if let Some(p) = &self.phases {
            spec.phases = p.clone();
        }
    }
}

/// Library defaults before validation.
pub fn library_spec(name: GaitName) -> GaitSpec {
    let two_phase = |swing: f64| vec![PhaseDef::swing(swing), PhaseDef::stance(1.0 - swing)];
    let (phases, theta_right) = match name {
        GaitName::Stand => (two_phase(0.01), 0.0),
        GaitName::Walk => (two_phase(0.40), 0.5),
        GaitName::Run => (two_phase(0.60), 0.5),
        GaitName::Hop => (two_phase(0.40), 0.0),
        GaitName::Gallop => (two_phase(0.40), 0.25),
        GaitName::Skip => (
            vec![
                PhaseDef::swing(0.3),
                PhaseDef::stance(0.2),
                PhaseDef::swing(0.3),
                PhaseDef::stance(0.2),
            ],
            0.5,
        ),
    };
    GaitSpec {
        name: name.as_str().to_string(),
        kappa: DEFAULT_KAPPA,
        period_steps: DEFAULT_PERIOD_STEPS,
        theta_left: 0.0,
        theta_right,
        phases,
    }
}

/// A validated library gait with optional overrides applied.
pub fn library_gait(name: GaitName, overrides: Option<&GaitOverrides>) -> Result<Gait, ValidationErrors> {
    let mut spec = library_spec(name);
    if let Some(o) = overrides {
        o.apply(&mut spec);
    }
    spec.validate()
}

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("malformed gait spec file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    UnknownBase(#[from] UnknownGait),
    #[error("spec file without `base` must set {0}")]
    Missing(&'static str),
}

/// Gait spec file: either a complete spec, or `base = "<library gait>"` plus
/// any subset of fields that replace the library defaults.
///
/// ```toml
/// base = "walk"
/// kappa = 32.0
/// theta_right = 0.45
///
/// [[phases]]
/// ratio = 0.35
/// c_frc = -1.0
/// c_spd = 0.0
/// ```
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaitSpecFile {
    pub base: Option<String>,
    #[serde(flatten)]
    pub fields: GaitOverrides,
}

impl GaitSpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecFileError> {
        Ok(toml::from_str(text)?)
    }

    /// The raw spec this file describes (not yet validated).
    pub fn resolve(&self) -> Result<GaitSpec, SpecFileError> {
        let mut spec = match &self.base {
            Some(b) => library_spec(b.parse()?),
            None => GaitSpec {
                name: self.fields.name.clone().unwrap_or_else(|| "custom".into()),
                kappa: self.fields.kappa.unwrap_or(DEFAULT_KAPPA),
                period_steps: self.fields.period_steps.unwrap_or(DEFAULT_PERIOD_STEPS),
                theta_left: self
                    .fields
                    .theta_left
                    .ok_or(SpecFileError::Missing("theta_left"))?,
                theta_right: self
                    .fields
                    .theta_right
                    .ok_or(SpecFileError::Missing("theta_right"))?,
                phases: self
                    .fields
                    .phases
                    .clone()
                    .ok_or(SpecFileError::Missing("phases"))?,
            },
        };
        self.fields.apply(&mut spec);
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two(a: f64, b: f64) -> GaitSpec {
        GaitSpec {
            name: "t".into(),
            kappa: 16.0,
            period_steps: 28,
            theta_left: 0.0,
            theta_right: 0.5,
            phases: vec![PhaseDef::swing(a), PhaseDef::stance(b)],
        }
    }

    #[test]
    fn validation() {
        assert!(two(0.4, 0.6).validate().is_ok());
        let err = two(0.5, 0.6).validate().unwrap_err();
        assert_eq!(err.0, vec![ValidationError::RatioSum(1.1)]);
        assert_eq!(err.to_string(), "ratios sum to 1.1");

        let mut s = two(0.4, 0.6);
        s.theta_left = 1.25;
        assert_eq!(s.validate().unwrap().theta(Foot::Left), 0.25);

        let mut bad = two(0.0, 1.0);
        bad.period_steps = 1;
        let errs = bad.validate().unwrap_err().0;
        assert!(errs.contains(&ValidationError::Period(1)));
        assert!(errs.contains(&ValidationError::Ratio { index: 0, ratio: 0.0 }));
        assert!(errs.contains(&ValidationError::Ratio { index: 1, ratio: 1.0 }));
    }

    #[test]
    fn single_full_phase_is_invalid() {
        let mut s = two(0.4, 0.6);
        s.phases = vec![PhaseDef::stance(1.0)];
        assert!(s.validate().is_err());
    }

    #[test]
    fn intervals_are_cumulative() {
        let g = two(0.4, 0.6).validate().unwrap();
        assert_eq!(g.boundaries(), &[0.0, 0.4, 1.0]);
        let d = g.phase_intervals();
        assert!((d[0].end().mean() - std::f64::consts::TAU * 0.4).abs() < 1e-12);
        assert_eq!(d[1].end().mean(), 0.0);

        let mut s = two(0.4, 0.6);
        s.phases = vec![PhaseDef::swing(0.25); 4];
        assert_eq!(s.validate().unwrap().boundaries(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn walk_plateaus() {
        let g = library_gait(GaitName::Walk, None).unwrap();
        let mid_swing = CycleTime::new(0.2);
        let mid_stance = CycleTime::new(0.7);
        assert!((g.coeff_expectation(Channel::Force, Foot::Left, mid_swing) + 1.0).abs() < 1e-3);
        assert!(g.coeff_expectation(Channel::Force, Foot::Left, mid_stance).abs() < 1e-3);
        assert!((g.coeff_expectation(Channel::Speed, Foot::Left, mid_stance) + 1.0).abs() < 1e-3);
    }

    #[test]
    fn library_offsets_and_shapes() {
        let hop = library_gait(GaitName::Hop, None).unwrap();
        assert_eq!((hop.theta(Foot::Left), hop.theta(Foot::Right)), (0.0, 0.0));
        let walk = library_gait(GaitName::Walk, None).unwrap();
        assert_eq!((walk.theta(Foot::Left) - walk.theta(Foot::Right)).abs(), 0.5);
        assert_eq!(library_gait(GaitName::Skip, None).unwrap().phases().len(), 4);
        assert_eq!(library_gait(GaitName::Run, None).unwrap().swing_ratio(), 0.6);
        assert_eq!(library_gait(GaitName::Stand, None).unwrap().swing_ratio(), 0.01);
        let gallop = library_gait(GaitName::Gallop, None).unwrap();
        assert_eq!((gallop.theta(Foot::Left) - gallop.theta(Foot::Right)).abs(), 0.25);
        assert!("nosuch".parse::<GaitName>().is_err());
        for n in GaitName::ALL {
            let g = library_gait(n, None).unwrap();
            assert!(g.phases().iter().all(|p| (p.coeff_frc, p.coeff_spd) == (-1.0, 0.0)
                || (p.coeff_frc, p.coeff_spd) == (0.0, -1.0)));
        }
    }

    #[test]
    fn hop_feet_identical() {
        let g = library_gait(GaitName::Hop, None).unwrap();
        for i in 0..100 {
            let phi = CycleTime::new(i as f64 / 100.0);
            assert_eq!(g.coeff_pair(Foot::Left, phi), g.coeff_pair(Foot::Right, phi));
        }
    }

    #[test]
    fn observation_clocks() {
        let g = two(0.4, 0.6).validate().unwrap();
        let o0 = g.observation(0);
        assert_eq!(o0.clocks[0], 0.0);
        assert_eq!(o0.ratios, vec![0.4, 0.6]);
        assert!((g.observation(7).clocks[0] - 1.0).abs() < 1e-12);
        let ol = g.observation(28);
        assert!((ol.clocks[0] - o0.clocks[0]).abs() < 1e-12);
        assert!((ol.clocks[1] - o0.clocks[1]).abs() < 1e-12);
    }

    #[test]
    fn spec_file_round_trip_and_overrides() {
        let walk = library_spec(GaitName::Walk);
        let text = walk.to_toml();
        let back = GaitSpecFile::parse(&text).unwrap().resolve().unwrap();
        assert_eq!(back, walk);

        let f = GaitSpecFile::parse("base = \"walk\"\nkappa = 32.0\ntheta_right = 0.45\n").unwrap();
        let s = f.resolve().unwrap();
        assert_eq!(s.kappa, 32.0);
        assert_eq!(s.theta_right, 0.45);
        assert_eq!(s.phases, walk.phases);

        assert!(GaitSpecFile::parse("base = \"walk\"\nbogus = 1\n").is_err());
        assert!(GaitSpecFile::parse("kappa = 3.0\n").unwrap().resolve().is_err());
    }

    fn any_spec() -> impl Strategy<Value = Gait> {
        (
            prop::collection::vec((0.05..1.0f64, -2.0..1.0f64, -2.0..1.0f64), 2..5),
            0.0..1.0f64,
            0.0..1.0f64,
            2.0..100.0f64,
        )
            .prop_map(|(raw, tl, tr, kappa)| {
                let total: f64 = raw.iter().map(|r| r.0).sum();
                let phases = raw
                    .iter()
                    .map(|&(r, f, s)| PhaseDef {
                        ratio: r / total,
                        coeff_frc: f,
                        coeff_spd: s,
                    })
                    .collect();
                GaitSpec {
                    name: "p".into(),
                    kappa,
                    period_steps: 20,
                    theta_left: tl,
                    theta_right: tr,
                    phases,
                }
                .validate()
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn periodic_and_bounded(g in any_spec(), phi in 0.0..1.0f64) {
            let lo = g.phases().iter().map(|p| p.coeff_frc).fold(0.0f64, f64::min);
            let hi = g.phases().iter().map(|p| p.coeff_frc).fold(0.0f64, f64::max);
            for foot in Foot::BOTH {
                let v = g.coeff_expectation(Channel::Force, foot, CycleTime::new(phi));
                let w = g.coeff_expectation(Channel::Force, foot, CycleTime::new(phi) + 1.0);
                prop_assert!((v - w).abs() < 1e-12);
                // Indicator expectations sum to at most one, so the curve stays in
                // the hull of the coefficients and zero.
                prop_assert!(v >= lo - 1e-9 && v <= hi + 1e-9, "{} not in [{}, {}]", v, lo, hi);
            }
        }

        #[test]
        fn offset_shift_identity(g in any_spec(), phi in 0.0..1.0f64) {
            let mut zeroed = g.spec().clone();
            zeroed.theta_left = 0.0;
            let z = zeroed.validate().unwrap();
            let theta = g.theta(Foot::Left);
            let a = g.coeff_expectation(Channel::Speed, Foot::Left, CycleTime::new(phi));
            let b = z.coeff_expectation(Channel::Speed, Foot::Left, CycleTime::new(phi + theta));
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn walk_antisymmetry(phi in 0.0..1.0f64) {
            let g = library_gait(GaitName::Walk, None).unwrap();
            let l = g.coeff_expectation(Channel::Force, Foot::Left, CycleTime::new(phi));
            let r = g.coeff_expectation(Channel::Force, Foot::Right, CycleTime::new(phi - 0.5));
            prop_assert!((l - r).abs() < 1e-9);
        }

        #[test]
        fn complementary_channels(phi in 0.0..1.0f64, name in 0usize..6) {
            let g = library_gait(GaitName::ALL[name], Some(&GaitOverrides { kappa: Some(1e4), ..Default::default() })).unwrap();
            let near = g.boundaries().iter().any(|b| {
                let d = (phi + g.theta(Foot::Right) - b).rem_euclid(1.0);
                d.min(1.0 - d) < 0.01
            });
            prop_assume!(!near);
            let c = g.coeff_pair(Foot::Right, CycleTime::new(phi));
            prop_assert!(!(c.force < -0.99 && c.speed < -0.99));
        }
    }
}
