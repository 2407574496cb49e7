use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::{PolicyParams, SearchError, POLICY_DIM};
use crate::gait_spec::Gait;
use crate::reward::{constant_schedule, score_trajectory, Commands, RewardConfig, RewardMode, DEFAULT_GAMMA};
use crate::toy_env::{run_episode, RolloutConfig, ToyParams};

/// Settings of the (μ, λ) evolution strategy and its fitness evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsConfig {
    /// λ
    pub population: usize,
    /// μ
    pub parents: usize,
    pub sigma0: f64,
    pub sigma_decay: f64,
    pub generations: usize,
    pub horizon: usize,
    pub episodes: usize,
    pub seed: u64,
    pub gamma: f64,
    pub mode: RewardMode,
    pub randomize: bool,
    pub params: ToyParams,
}

impl Default for EsConfig {
    fn default() -> Self {
        Self {
            population: 32,
            parents: 8,
            sigma0: 0.1,
            sigma_decay: 0.97,
            generations: 200,
            horizon: 240,
            episodes: 4,
            seed: 0,
            gamma: DEFAULT_GAMMA,
            mode: RewardMode::Multi,
            randomize: true,
            params: ToyParams::default(),
        }
    }
}

impl EsConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: &str| Err(SearchError::Config(m.to_string()));
        if self.parents == 0 || self.parents >= self.population {
            return bad("parents must satisfy 1 <= parents < population");
        }
        if !(self.sigma0 > 0.0 && self.sigma0.is_finite()) {
            return bad("sigma0 must be positive");
        }
        if !(self.sigma_decay > 0.0 && self.sigma_decay <= 1.0) {
            return bad("sigma decay must lie in (0, 1]");
        }
        if self.horizon == 0 || self.episodes == 0 {
            return bad("horizon and episodes must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return bad("gamma must lie in [0, 1]");
        }
        Ok(())
    }
}

/// Rollout seeds shared by every candidate of generation `generation`.
pub fn episode_seeds(seed: u64, generation: usize, episodes: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1 + generation as u64);
    (0..episodes).map(|_| rng.random()).collect()
}

/// Mean discounted return over one rollout per seed. Falls and divergence
/// truncate the scored trajectory.
pub fn evaluate(
    params: &PolicyParams,
    gait: &Gait,
    cmd: Commands,
    cfg: &EsConfig,
    seeds: &[u64],
) -> f64 {
    let reward_cfg = RewardConfig::default();
    let sum: f64 = seeds
        .iter()
        .map(|&seed| {
            let rc = RolloutConfig {
                horizon: cfg.horizon,
                seed,
                randomize: cfg.randomize,
                params: cfg.params,
            };
            let r = run_episode(params, gait, cmd, &rc);
            let schedule = constant_schedule(gait, cmd, r.steps.len());
            score_trajectory(&r.steps, &schedule, cfg.gamma, cfg.mode, &reward_cfg)
                .map(|b| b.discounted_return)
                .unwrap_or(0.0)
        })
        .sum();
    sum / seeds.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best: f64,
    pub mean: f64,
    pub best_ever: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best: PolicyParams,
    pub best_fitness: f64,
    /// Distribution mean after the last generation.
    pub final_mean: PolicyParams,
    /// Row 0 scores the initial parameters.
    pub history: Vec<GenerationStats>,
}

impl SearchResult {
    pub fn write_history_csv<W: std::io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.history {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn recombination_weights(mu: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..mu)
        .map(|i| (mu as f64 + 0.5).ln() - ((i + 1) as f64).ln())
        .collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / s).collect()
}

/// (μ, λ) evolution strategy from `init` with rank-weighted recombination and
/// geometric step-size decay. Returns the best parameters ever evaluated.
pub fn optimize(
    init: &PolicyParams,
    gait: &Gait,
    cmd: Commands,
    cfg: &EsConfig,
) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let mut noise = ChaCha8Rng::seed_from_u64(cfg.seed);
    let weights = recombination_weights(cfg.parents);
    let mut mean = init.as_slice().to_vec();
    let mut sigma = cfg.sigma0;

    let f0 = evaluate(init, gait, cmd, cfg, &episode_seeds(cfg.seed, 0, cfg.episodes));
    let mut best = (init.clone(), f0);
    let mut history = vec![GenerationStats {
        generation: 0,
        best: f0,
        mean: f0,
        best_ever: f0,
        sigma,
    }];

    for g in 1..=cfg.generations {
        let seeds = episode_seeds(cfg.seed, g, cfg.episodes);
        let mut scored: Vec<(f64, Vec<f64>)> = (0..cfg.population)
            .map(|_| {
                let x: Vec<f64> = mean
                    .iter()
                    .map(|m| m + sigma * noise.sample::<f64, _>(StandardNormal))
                    .collect();
                let p = PolicyParams::from_vec(x.clone()).expect("finite offspring");
                (evaluate(&p, gait, cmd, cfg, &seeds), x)
            })
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));

        mean = vec![0.0; POLICY_DIM];
        for (w, (_, x)) in weights.iter().zip(&scored) {
            for (m, xi) in mean.iter_mut().zip(x) {
                *m += w * xi;
            }
        }
        let gen_best = scored[0].0;
        if gen_best > best.1 {
            best = (PolicyParams::from_vec(scored[0].1.clone())?, gen_best);
        }
        let gen_mean = scored.iter().map(|s| s.0).sum::<f64>() / scored.len() as f64;
        history.push(GenerationStats {
            generation: g,
            best: gen_best,
            mean: gen_mean,
            best_ever: best.1,
            sigma,
        });
        log::debug!("generation {g}: best {gen_best:.4} mean {gen_mean:.4} sigma {sigma:.4}");
        sigma *= cfg.sigma_decay;
    }
    Ok(SearchResult {
        best: best.0,
        best_fitness: best.1,
        final_mean: PolicyParams::from_vec(mean)?,
        history,
    })
}
