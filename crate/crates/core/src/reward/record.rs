//! Line-delimited JSON trajectory records.
//!
//! One object per timestep:
//!
//! ```text
//! {"t":0,"frc_l":[0,0,150],"frc_r":[0,0,150],"spd_l":[0,0,0],"spd_r":[0,0,0],
//!  "pelvis_vel":[0,0],"quat":[1,0,0,0],"rot_vel":[0,0,0],"accel":[0,0,0],
//!  "action":[...],"prev_action":[...],"torques":[...],"pos_l":[0,0,0],
//!  "pos_r":[0,0,0],"cmd_x":0,"cmd_y":0,"cmd_quat":[1,0,0,0]}
//! ```
//!
//! `prev_action` is optional; when absent it is taken from the previous
//! record's `action` (zeros for the first record). Bare `NaN`/`Infinity`
//! tokens are accepted by the reader only so they can be reported by field.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use super::types::{norm, Commands, Quat, TrajectoryStep, Vec3};

/// A step together with the command that was in force.
#[derive(Debug, Clone, PartialEq)]
pub struct LoggedStep {
    pub step: TrajectoryStep,
    pub cmd: Commands,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("record is not a JSON object")]
    NotObject,
    #[error("missing field '{0}'")]
    Missing(&'static str),
    #[error("field '{0}' has a non-finite value")]
    NonFinite(&'static str),
    #[error("field '{field}' must be {expected}")]
    Shape {
        field: &'static str,
        expected: &'static str,
    },
    #[error("field '{field}' has quaternion norm {norm}")]
    Quaternion { field: &'static str, norm: f64 },
    #[error("prev_action has length {prev}, action has length {action}")]
    ActionLength { action: usize, prev: usize },
    #[error("read failed: {0}")]
    Io(String),
}

const KNOWN: [&str; 17] = [
    "t", "frc_l", "frc_r", "spd_l", "spd_r", "pelvis_vel", "quat", "rot_vel", "accel", "action",
    "prev_action", "torques", "pos_l", "pos_r", "cmd_x", "cmd_y", "cmd_quat",
];
const NON_FINITE_MARK: &str = "\u{0}non-finite";
const QUAT_TOL: f64 = 1e-3;

/// Parses a whole record stream.
pub fn read_trajectory<R: BufRead>(reader: R) -> Result<Vec<LoggedStep>, ParseError> {
    let mut out: Vec<LoggedStep> = Vec::new();
    let mut warned = BTreeSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| ParseError {
            line: line_no,
            kind: ParseErrorKind::Io(e.to_string()),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let prev = out.last().map(|r| r.step.action.as_slice());
        let rec = parse_record(&line, prev, &mut warned).map_err(|kind| ParseError {
            line: line_no,
            kind,
        })?;
        out.push(rec);
    }
    Ok(out)
}

pub fn parse_trajectory_str(text: &str) -> Result<Vec<LoggedStep>, ParseError> {
    read_trajectory(text.as_bytes())
}

fn parse_record(
    line: &str,
    prev_action: Option<&[f64]>,
    warned: &mut BTreeSet<String>,
) -> Result<LoggedStep, ParseErrorKind> {
    let value: Value = serde_json::from_str(&mark_non_finite(line))
        .map_err(|e| ParseErrorKind::Json(e.to_string()))?;
    let Value::Object(map) = value else {
        return Err(ParseErrorKind::NotObject);
    };
    for key in map.keys() {
        if !KNOWN.contains(&key.as_str()) && warned.insert(key.clone()) {
            log::warn!("ignoring unknown trajectory field '{key}'");
        }
    }

    let t = match map.get("t") {
        None => return Err(ParseErrorKind::Missing("t")),
        Some(v) => v.as_u64().ok_or(ParseErrorKind::Shape {
            field: "t",
            expected: "a nonnegative integer",
        })?,
    };
    let action = vector(&map, "action")?;
    let prev_action = match map.get("prev_action") {
        Some(_) => vector(&map, "prev_action")?,
        None => prev_action
            .filter(|p| p.len() == action.len())
            .map(<[f64]>::to_vec)
            .unwrap_or_else(|| vec![0.0; action.len()]),
    };
    if prev_action.len() != action.len() {
        return Err(ParseErrorKind::ActionLength {
            action: action.len(),
            prev: prev_action.len(),
        });
    }
    let step = TrajectoryStep {
        t,
        foot_force_left: fixed(&map, "frc_l")?,
        foot_force_right: fixed(&map, "frc_r")?,
        foot_speed_left: fixed(&map, "spd_l")?,
        foot_speed_right: fixed(&map, "spd_r")?,
        pelvis_velocity: fixed(&map, "pelvis_vel")?,
        pelvis_orientation: quaternion(&map, "quat")?,
        pelvis_rot_velocity: fixed(&map, "rot_vel")?,
        pelvis_acceleration: fixed(&map, "accel")?,
        action,
        prev_action,
        joint_torques: vector(&map, "torques")?,
        foot_position_left: fixed(&map, "pos_l")?,
        foot_position_right: fixed(&map, "pos_r")?,
    };
    let cmd = Commands {
        xdot_desired: scalar(&map, "cmd_x")?,
        ydot_desired: scalar(&map, "cmd_y")?,
        quat_desired: quaternion(&map, "cmd_quat")?,
    };
    Ok(LoggedStep { step, cmd })
}

fn number(v: &Value, field: &'static str, expected: &'static str) -> Result<f64, ParseErrorKind> {
    match v {
        Value::Number(n) => n.as_f64().ok_or(ParseErrorKind::Shape { field, expected }),
        Value::String(s) if s == NON_FINITE_MARK => Err(ParseErrorKind::NonFinite(field)),
        Value::Null => Err(ParseErrorKind::NonFinite(field)),
        _ => Err(ParseErrorKind::Shape { field, expected }),
    }
}

fn scalar(map: &Map<String, Value>, field: &'static str) -> Result<f64, ParseErrorKind> {
    let v = map.get(field).ok_or(ParseErrorKind::Missing(field))?;
    number(v, field, "a number")
}

fn vector(map: &Map<String, Value>, field: &'static str) -> Result<Vec<f64>, ParseErrorKind> {
    let expected = "an array of numbers";
    match map.get(field).ok_or(ParseErrorKind::Missing(field))? {
        Value::Array(items) => items.iter().map(|v| number(v, field, expected)).collect(),
        _ => Err(ParseErrorKind::Shape { field, expected }),
    }
}

fn fixed<const N: usize>(
    map: &Map<String, Value>,
    field: &'static str,
) -> Result<[f64; N], ParseErrorKind> {
    let v = vector(map, field)?;
    v.try_into().map_err(|_| ParseErrorKind::Shape {
        field,
        expected: match N {
            2 => "an array of 2 numbers",
            3 => "an array of 3 numbers",
            _ => "an array of 4 numbers",
        },
    })
}

fn quaternion(map: &Map<String, Value>, field: &'static str) -> Result<Quat, ParseErrorKind> {
    let mut q: Quat = fixed(map, field)?;
    let n = norm(&q);
    if (n - 1.0).abs() > QUAT_TOL {
        return Err(ParseErrorKind::Quaternion { field, norm: n });
    }
    if (n - 1.0).abs() > 1e-9 {
        q.iter_mut().for_each(|x| *x /= n);
    }
    Ok(q)
}

/// Replaces bare `NaN`, `Infinity` and `-Infinity` tokens outside strings with
/// a marker string, so the offending field can be named.
fn mark_non_finite(line: &str) -> String {
    let marker = format!("\"{}\"", NON_FINITE_MARK.replace('\u{0}', "\\u0000"));
    let bytes = line.as_bytes();
    let mut out = String::with_capacity(line.len());
    let mut in_string = false;
    let mut escaped = false;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if in_string {
            if escaped {
                escaped = false;
            } else if c == b'\\' {
                escaped = true;
            } else if c == b'"' {
                in_string = false;
            }
        } else if c == b'"' {
            in_string = true;
        } else {
            let rest = &line[i..];
            let token = ["-Infinity", "Infinity", "NaN"]
                .into_iter()
                .find(|t| rest.starts_with(t));
            if let Some(t) = token {
                out.push_str(&marker);
                i += t.len();
                continue;
            }
        }
        // Copy the full UTF-8 character.
        let ch = line[i..].chars().next().expect("in bounds");
        out.push(ch);
        i += ch.len_utf8();
    }
    out
}

#[derive(Serialize)]
struct RecordOut<'a> {
    t: u64,
    frc_l: &'a Vec3,
    frc_r: &'a Vec3,
    spd_l: &'a Vec3,
    spd_r: &'a Vec3,
    pelvis_vel: &'a [f64; 2],
    quat: &'a Quat,
    rot_vel: &'a Vec3,
    accel: &'a Vec3,
    action: &'a [f64],
    prev_action: &'a [f64],
    torques: &'a [f64],
    pos_l: &'a Vec3,
    pos_r: &'a Vec3,
    cmd_x: f64,
    cmd_y: f64,
    cmd_quat: &'a Quat,
}

/// Writes one JSON object per line.
pub fn write_trajectory<W: Write>(mut out: W, records: &[LoggedStep]) -> std::io::Result<()> {
    for r in records {
        let s = &r.step;
        let rec = RecordOut {
            t: s.t,
            frc_l: &s.foot_force_left,
            frc_r: &s.foot_force_right,
            spd_l: &s.foot_speed_left,
            spd_r: &s.foot_speed_right,
            pelvis_vel: &s.pelvis_velocity,
            quat: &s.pelvis_orientation,
            rot_vel: &s.pelvis_rot_velocity,
            accel: &s.pelvis_acceleration,
            action: &s.action,
            prev_action: &s.prev_action,
            torques: &s.joint_torques,
            pos_l: &s.foot_position_left,
            pos_r: &s.foot_position_right,
            cmd_x: r.cmd.xdot_desired,
            cmd_y: r.cmd.ydot_desired,
            cmd_quat: &r.cmd.quat_desired,
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
