use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Closed ranges of the per-rollout dynamics randomization.
pub mod ranges {
    pub const DAMPING_SCALE: (f64, f64) = (0.3, 4.0);
    pub const MASS_SCALE: (f64, f64) = (0.5, 1.5);
    pub const GROUND_FRICTION: (f64, f64) = (0.35, 1.1);
    /// rad
    pub const GROUND_SLOPE: (f64, f64) = (-0.03, 0.03);
    /// rad
    pub const ENCODER_OFFSET: (f64, f64) = (-0.05, 0.05);
}

pub const NOMINAL_FRICTION: f64 = 0.8;

/// Dynamics parameters drawn once per rollout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomizationConfig {
    /// Multiplies leg damping.
    pub damping_scale: f64,
    /// Multiplies pelvis mass and pitch inertia.
    pub mass_scale: f64,
    pub ground_friction: f64,
    pub ground_slope: f64,
    /// Added to the reported pitch only.
    pub encoder_offset: f64,
}

impl Default for RandomizationConfig {
    fn default() -> Self {
        Self::nominal()
    }
}

impl RandomizationConfig {
    pub fn nominal() -> Self {
        Self {
            damping_scale: 1.0,
            mass_scale: 1.0,
            ground_friction: NOMINAL_FRICTION,
            ground_slope: 0.0,
            encoder_offset: 0.0,
        }
    }

    /// Uniform draw from every range.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut u = |(lo, hi): (f64, f64)| rng.random_range(lo..=hi);
        Self {
            damping_scale: u(ranges::DAMPING_SCALE),
            mass_scale: u(ranges::MASS_SCALE),
            ground_friction: u(ranges::GROUND_FRICTION),
            ground_slope: u(ranges::GROUND_SLOPE),
            encoder_offset: u(ranges::ENCODER_OFFSET),
        }
    }

    pub fn from_seed(seed: u64) -> Self {
        Self::sample(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn within_ranges(&self) -> bool {
        let inside = |v: f64, (lo, hi): (f64, f64)| (lo..=hi).contains(&v);
        inside(self.damping_scale, ranges::DAMPING_SCALE)
            && inside(self.mass_scale, ranges::MASS_SCALE)
            && inside(self.ground_friction, ranges::GROUND_FRICTION)
            && inside(self.ground_slope, ranges::GROUND_SLOPE)
            && inside(self.encoder_offset, ranges::ENCODER_OFFSET)
    }
}
