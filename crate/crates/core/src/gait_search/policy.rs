use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::toy_env::{Policy, PolicyInput, ToyAction, ToyParams};

pub const HARMONICS: usize = 3;
pub const SERIES_LEN: usize = 1 + 2 * HARMONICS;
pub const POLICY_DIM: usize = 4 * SERIES_LEN + 4;

const GAIN_X: usize = 4 * SERIES_LEN;
const GAIN_Z: usize = GAIN_X + 1;
const STIFFNESS: usize = GAIN_X + 2;

/// Periodic foot-target policy: a truncated Fourier series per foot and axis
/// over the foot's own clock phase, pelvis velocity feedback, and a stiffness
/// scale per foot stored as an offset from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyParams(Vec<f64>);

impl Default for PolicyParams {
    fn default() -> Self {
        Self::zeros()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolicyError {
    #[error("expected {POLICY_DIM} parameters, got {0}")]
    Dimension(usize),
    #[error("parameter {0} is not finite")]
    NonFinite(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl PolicyParams {
    pub fn zeros() -> Self {
        Self(vec![0.0; POLICY_DIM])
    }

    pub fn from_vec(v: Vec<f64>) -> Result<Self, PolicyError> {
        if v.len() != POLICY_DIM {
            return Err(PolicyError::Dimension(v.len()));
        }
        if let Some(i) = v.iter().position(|x| !x.is_finite()) {
            return Err(PolicyError::NonFinite(Self::names()[i].clone()));
        }
        Ok(Self(v))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Names in storage order, e.g. `left_dz_cos2` or `gain_vx`.
    pub fn names() -> Vec<String> {
        let mut out = Vec::with_capacity(POLICY_DIM);
        for foot in ["left", "right"] {
            for axis in ["dx", "dz"] {
                out.push(format!("{foot}_{axis}_c0"));
                for k in 1..=HARMONICS {
                    out.push(format!("{foot}_{axis}_cos{k}"));
                    out.push(format!("{foot}_{axis}_sin{k}"));
                }
            }
        }
        out.extend(["gain_vx", "gain_vz", "stiffness_left", "stiffness_right"].map(String::from));
        out
    }

    fn series(&self, foot: usize, axis: usize, psi: f64) -> f64 {
        let c = &self.0[(2 * foot + axis) * SERIES_LEN..][..SERIES_LEN];
        let mut v = c[0];
        for k in 1..=HARMONICS {
            let (s, co) = (std::f64::consts::TAU * k as f64 * psi).sin_cos();
            v += c[2 * k - 1] * co + c[2 * k] * s;
        }
        v
    }

    /// `name = value` lines in storage order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, v) in Self::names().iter().zip(&self.0) {
            let _ = writeln!(out, "{n} = {v:?}");
        }
        out
    }
}

impl FromStr for PolicyParams {
    type Err = PolicyError;

    /// Reads `name = value` lines. Blank lines and `#` comments are skipped;
    /// every name must appear exactly once.
    fn from_str(text: &str) -> Result<Self, PolicyError> {
        let names = Self::names();
        let mut v: Vec<Option<f64>> = vec![None; POLICY_DIM];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| PolicyError::Parse { line, msg };
            let (name, value) = body
                .split_once('=')
                .ok_or_else(|| err("expected `name = value`".into()))?;
            let name = name.trim();
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| err(format!("unknown parameter `{name}`")))?;
            let x: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("`{}` is not a number", value.trim())))?;
            if v[idx].replace(x).is_some() {
                return Err(err(format!("duplicate parameter `{name}`")));
            }
        }
        let missing: Vec<&str> = names
            .iter()
            .zip(&v)
            .filter(|(_, x)| x.is_none())
            .map(|(n, _)| n.as_str())
            .collect();
        if !missing.is_empty() {
            return Err(PolicyError::Parse {
                line: text.lines().count(),
                msg: format!("missing parameters: {}", missing.join(", ")),
            });
        }
        Self::from_vec(v.into_iter().flatten().collect())
    }
}

impl Policy for PolicyParams {
    fn act(&self, input: &PolicyInput, params: &ToyParams) -> ToyAction {
        let mut a = ToyAction::neutral(params);
        let ex = input.pelvis_velocity[0] - input.cmd.xdot_desired;
        let ez = input.pelvis_velocity[1];
        for f in 0..2 {
            let psi = input.foot_phase[f].value();
            a.targets[f][0] += self.series(f, 0, psi) + self.0[GAIN_X] * ex;
            a.targets[f][1] += self.series(f, 1, psi) + self.0[GAIN_Z] * ez;
            a.stiffness[f] += self.0[STIFFNESS + f];
        }
        a.clamped(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p = PolicyParams::from_vec((0..POLICY_DIM).map(|i| (i as f64 * 0.37).sin() / 3.0).collect()).unwrap();
        let back: PolicyParams = p.to_text().parse().unwrap();
        assert_eq!(back, p);
        assert_eq!(PolicyParams::names().len(), 32);
    }

    #[test]
    fn rejects_bad_files() {
        let text = PolicyParams::zeros().to_text();
        let dropped: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(matches!(dropped.parse::<PolicyParams>(), Err(PolicyError::Parse { .. })));
        let dup = format!("{text}gain_vx = 1\n");
        assert!(dup.parse::<PolicyParams>().is_err());
        let bad = text.replace("gain_vz = 0.0", "gain_vz = fast");
        let e = bad.parse::<PolicyParams>().unwrap_err().to_string();
        assert!(e.starts_with("line 30:"), "{e}");
        assert!(PolicyParams::from_vec(vec![0.0; 3]).is_err());
    }
}
