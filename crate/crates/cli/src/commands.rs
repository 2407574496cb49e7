use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use phasegait::gait_search::{assess, optimize, EsConfig, PolicyParams, WARMUP_CYCLES};
use phasegait::gait_spec::{Channel, Foot, Gait, GaitName, GaitOverrides, GaitSpecFile, library_spec};
use phasegait::phase_math::{
    indicator_expectation, mc_indicator_grid, CycleTime, IndicatorDistribution,
};
use phasegait::reward::{
    constant_schedule, read_trajectory, score_trajectory, write_trajectory, Commands,
    RewardConfig, ScheduleEntry,
};
use phasegait::toy_env::{rollout as run_rollout, RolloutConfig, ZeroPolicy};

use crate::args::{GaitArgs, PlotArgs, RolloutArgs, ScoreArgs, ShowArgs, TrainArgs, VerifyArgs};
use crate::{usage, CliError};

/// Library gait or spec file, with flag overrides applied, validated.
pub fn resolve_gait(args: &GaitArgs) -> Result<Gait, CliError> {
    let mut spec = match (&args.gait, &args.spec) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            GaitSpecFile::parse(&text)
                .and_then(|f| f.resolve())
                .map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        (Some(name), None) => library_spec(name.parse::<GaitName>().map_err(|e| usage(e.to_string()))?),
        (None, None) => return Err(usage("a gait is required: pass --gait NAME or --spec FILE")),
    };
    GaitOverrides {
        kappa: args.kappa,
        period_steps: args.period,
        theta_left: args.theta_left,
        theta_right: args.theta_right,
        ..GaitOverrides::default()
    }
    .apply(&mut spec);
    spec.validate()
        .map_err(|e| usage(format!("invalid gait specification:\n{e}")))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

pub(crate) fn show<W: Write>(a: ShowArgs, out: &mut W) -> Result<(), CliError> {
    let mut g = a.gait;
    if a.name.is_some() {
        g.gait = a.name;
    }
    let gait = resolve_gait(&g)?;
    let s = gait.spec();
    writeln!(out, "gait: {}", s.name)?;
    writeln!(out, "kappa: {}", s.kappa)?;
    writeln!(out, "period_steps: {}", s.period_steps)?;
    writeln!(out, "theta_left: {}", s.theta_left)?;
    writeln!(out, "theta_right: {}", s.theta_right)?;
    writeln!(out, "swing_ratio: {}", gait.swing_ratio())?;
    writeln!(out, "phases: {}", s.phases.len())?;
    let b = gait.boundaries();
    for (i, p) in s.phases.iter().enumerate() {
        writeln!(
            out,
            "  {i}: {} ratio={} c_frc={} c_spd={} cycle=[{}, {})",
            if p.is_swing() { "swing " } else { "stance" },
            p.ratio,
            p.coeff_frc,
            p.coeff_spd,
            b[i],
            b[i + 1]
        )?;
    }
    Ok(())
}

/// Rows of `phi, c_frc_left, c_frc_right, c_spd_left, c_spd_right` at
/// `samples` evenly spaced cycle times starting from 0.
pub fn plot_coeffs_table(gait: &Gait, samples: usize) -> Vec<[f64; 5]> {
    (0..samples)
        .map(|i| {
            let phi = CycleTime::new(i as f64 / samples as f64);
            let c = |ch, f| gait.coeff_expectation(ch, f, phi);
            [
                phi.value(),
                c(Channel::Force, Foot::Left),
                c(Channel::Force, Foot::Right),
                c(Channel::Speed, Foot::Left),
                c(Channel::Speed, Foot::Right),
            ]
        })
        .collect()
}

fn write_table<W: Write>(out: &mut W, header: &str, rows: &[[f64; 5]]) -> std::io::Result<()> {
    writeln!(out, "{header}")?;
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r[0], r[1], r[2], r[3], r[4])?;
    }
    out.flush()
}

pub(crate) fn plot_coeffs<W: Write>(a: PlotArgs, out: &mut W) -> Result<(), CliError> {
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let gait = resolve_gait(&a.gait)?;
    let rows = plot_coeffs_table(&gait, a.samples);
    let header = "phi,c_frc_left,c_frc_right,c_spd_left,c_spd_right";
    match &a.out {
        Some(p) => {
            write_table(&mut create(p)?, header, &rows)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), p.display())?;
        }
        None => write_table(out, header, &rows)?,
    }
    Ok(())
}

pub(crate) fn score<W: Write>(a: ScoreArgs, out: &mut W) -> Result<(), CliError> {
    let gait = resolve_gait(&a.gait)?;
    if !(0.0..=1.0).contains(&a.gamma) {
        return Err(usage(format!("--gamma must lie in [0, 1], got {}", a.gamma)));
    }
    let file = File::open(&a.input)
        .with_context(|| format!("opening {}", a.input.display()))?;
    let logged = read_trajectory(BufReader::new(file))
        .map_err(|e| usage(format!("{}: {e}", a.input.display())))?;
    if logged.is_empty() {
        return Err(usage(format!("{}: no records", a.input.display())));
    }
    let steps: Vec<_> = logged.iter().map(|l| l.step.clone()).collect();
    let schedule: Vec<ScheduleEntry<'_>> = logged
        .iter()
        .map(|l| ScheduleEntry { gait: &gait, cmd: l.cmd })
        .collect();
    let b = score_trajectory(&steps, &schedule, a.gamma, a.mode, &RewardConfig::default())
        .map_err(|e| usage(format!("{}: {e}", a.input.display())))?;
    if let Some(p) = &a.out {
        let mut w = create(p)?;
        b.write_csv(&mut w).context("writing breakdown")?;
        w.flush()?;
    }
    writeln!(
        out,
        "steps={} total={} discounted_return={}",
        b.steps.len(),
        b.total,
        b.discounted_return
    )?;
    Ok(())
}

pub const VERIFY_MIN_SAMPLES: u64 = 100_000;
pub const VERIFY_TOLERANCE: f64 = 5e-3;

/// Interval geometries checked by `verify`, as (start, end) cycle times:
/// a short interval, one ending at the cycle boundary, one wrapping across it.
pub const VERIFY_INTERVALS: [(f64, f64); 3] = [(0.1, 0.35), (0.4, 1.0), (0.8, 0.15)];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyCase {
    pub kappa: f64,
    pub start: f64,
    pub end: f64,
    pub max_abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub cases: Vec<VerifyCase>,
}

impl VerifyReport {
    pub fn max_abs_error(&self) -> f64 {
        self.cases.iter().map(|c| c.max_abs_error).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_abs_error() < VERIFY_TOLERANCE
    }
}

/// Analytic versus Monte Carlo indicator expectation over a `grid`-point
/// cycle-time grid for each kappa and interval geometry.
pub fn verify_report(kappas: &[f64], grid: usize, samples: u64, seed: u64) -> anyhow::Result<VerifyReport> {
    let phis: Vec<CycleTime> = (0..grid)
        .map(|i| CycleTime::new((i as f64 + 0.5) / grid as f64))
        .collect();
    let mut cases = Vec::new();
    for (ki, &kappa) in kappas.iter().enumerate() {
        for (gi, &(start, end)) in VERIFY_INTERVALS.iter().enumerate() {
            let dist = IndicatorDistribution::from_cycles(start, end, kappa)?;
            let case_seed = seed
                .wrapping_mul(31)
                .wrapping_add((ki * VERIFY_INTERVALS.len() + gi) as u64);
            let mc = mc_indicator_grid(&phis, &dist, samples, case_seed)?;
            let max_abs_error = phis
                .iter()
                .zip(&mc)
                .map(|(p, m)| (indicator_expectation(*p, &dist) - m).abs())
                .fold(0.0, f64::max);
            cases.push(VerifyCase {
                kappa,
                start,
                end,
                max_abs_error,
            });
        }
    }
    Ok(VerifyReport { cases })
}

pub(crate) fn verify<W: Write>(a: VerifyArgs, out: &mut W) -> Result<(), CliError> {
    if a.samples < VERIFY_MIN_SAMPLES {
        return Err(usage(format!(
            "--samples must be at least {VERIFY_MIN_SAMPLES}, got {}",
            a.samples
        )));
    }
    if a.grid == 0 {
        return Err(usage("--grid must be at least 1"));
    }
    if a.kappa.is_empty() || a.kappa.iter().any(|k| !(*k > 0.0 && k.is_finite())) {
        return Err(usage("--kappa values must be positive"));
    }
    let report = verify_report(&a.kappa, a.grid, a.samples, a.seed)?;
    if let Some(p) = &a.out {
        let mut w = create(p)?;
        writeln!(w, "kappa,start,end,max_abs_error")?;
        for c in &report.cases {
            writeln!(w, "{},{},{},{}", c.kappa, c.start, c.end, c.max_abs_error)?;
        }
        w.flush()?;
    }
    for c in &report.cases {
        writeln!(
            out,
            "kappa={} interval=[{}, {}] max_abs_error={:.3e}",
            c.kappa, c.start, c.end, c.max_abs_error
        )?;
    }
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{verdict}: max_abs_error={:.3e} tolerance={VERIFY_TOLERANCE:e} samples={}",
        report.max_abs_error(),
        a.samples
    )?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Runtime(anyhow::anyhow!(
            "analytic and Monte Carlo estimates disagree"
        )))
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), |x| x.to_string())
}

pub(crate) fn train<W: Write>(a: TrainArgs, out: &mut W) -> Result<(), CliError> {
    let gait = resolve_gait(&a.gait)?;
    let cfg = EsConfig {
        population: a.population,
        parents: a.parents,
        sigma0: a.sigma,
        generations: a.generations,
        horizon: a.horizon,
        episodes: a.episodes,
        seed: a.seed,
        gamma: a.gamma,
        ..EsConfig::default()
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let cmd = Commands {
        xdot_desired: a.speed,
        ..Commands::default()
    };
    cmd.validate().map_err(|e| usage(e.to_string()))?;

    let result = optimize(&PolicyParams::zeros(), &gait, cmd, &cfg).map_err(|e| usage(e.to_string()))?;
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let policy_path = a.out.join("policy.txt");
    fs::write(&policy_path, result.best.to_text())
        .with_context(|| format!("writing {}", policy_path.display()))?;
    let mut h = create(&a.out.join("history.csv"))?;
    result.write_history_csv(&mut h).context("writing history")?;
    h.flush()?;

    let mut contact = create(&a.out.join("contact.csv"))?;
    writeln!(
        contact,
        "duty_left,duty_right,phase_difference,flight_fraction,swing_grf,stance_grf,fell"
    )?;
    let analysis_horizon = a.horizon.max((WARMUP_CYCLES + 2) * gait.period_steps());
    match assess(&result.best, &gait, cmd, analysis_horizon, a.seed, &cfg.params) {
        Ok(report) => {
            let mut g = create(&a.out.join("grf.csv"))?;
            report.grf.write_csv(&mut g).context("writing GRF report")?;
            g.flush()?;
            let p = &report.pattern;
            writeln!(
                contact,
                "{},{},{},{},{},{},{}",
                p.duty_factor[0],
                p.duty_factor[1],
                fmt_opt(p.phase_difference),
                p.flight_fraction,
                fmt_opt(report.grf.deep_swing_grf()),
                fmt_opt(report.grf.deep_stance_grf()),
                report.rollout.fell()
            )?;
            writeln!(
                out,
                "best_fitness={} phase_difference={} duty=[{}, {}] flight_fraction={}",
                result.best_fitness,
                fmt_opt(p.phase_difference),
                p.duty_factor[0],
                p.duty_factor[1],
                p.flight_fraction
            )?;
        }
        Err(e) => {
            log::warn!("best policy could not be analyzed: {e}");
            writeln!(out, "best_fitness={} analysis unavailable: {e}", result.best_fitness)?;
        }
    }
    contact.flush()?;
    writeln!(out, "wrote {}", a.out.display())?;
    Ok(())
}

pub(crate) fn rollout<W: Write>(a: RolloutArgs, out: &mut W) -> Result<(), CliError> {
    let gait = resolve_gait(&a.gait)?;
    if a.horizon == 0 {
        return Err(usage("--horizon must be at least 1"));
    }
    if !(0.0..=1.0).contains(&a.gamma) {
        return Err(usage(format!("--gamma must lie in [0, 1], got {}", a.gamma)));
    }
    let cmd = Commands {
        xdot_desired: a.speed,
        ..Commands::default()
    };
    let rc = RolloutConfig {
        horizon: a.horizon,
        seed: a.seed,
        randomize: a.randomize,
        ..RolloutConfig::new(a.horizon, a.seed)
    };
    let r = match &a.policy {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            let params: PolicyParams = text
                .parse()
                .map_err(|e| usage(format!("{}: {e}", p.display())))?;
            run_rollout(&params, &gait, cmd, &rc)
        }
        None => run_rollout(&ZeroPolicy, &gait, cmd, &rc),
    }
    .context("rollout failed")?;
    let mut w = create(&a.out)?;
    write_trajectory(&mut w, &r.logged()).context("writing trajectory")?;
    w.flush()?;
    let schedule = constant_schedule(&gait, cmd, r.steps.len());
    let b = score_trajectory(&r.steps, &schedule, a.gamma, a.mode, &RewardConfig::default())
        .context("scoring rollout")?;
    writeln!(
        out,
        "steps={} fell={} total={} discounted_return={}",
        r.steps.len(),
        r.fell(),
        b.total,
        b.discounted_return
    )?;
    Ok(())
}
