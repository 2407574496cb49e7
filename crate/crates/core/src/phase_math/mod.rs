//! Circular-statistics kernel behind the phase indicators.

mod bessel;
mod indicator;
mod von_mises;

pub use bessel::{bessel_i0, bessel_i0e};
pub use indicator::{
    crisp_indicator, indicator_expectation, mc_indicator_grid, mc_indicator_oracle, CycleTime,
    IndicatorDistribution,
};
pub use von_mises::{normalize_angle, von_mises_cdf, wrap_pi, VonMisesParams};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    #[error("bessel_i0 needs a finite argument, got {0}")]
    BesselDomain(f64),
    #[error("von Mises concentration must be finite and > 0, got {0}")]
    Concentration(f64),
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("start and end concentrations differ ({0} vs {1})")]
    KappaMismatch(f64, f64),
    #[error("Monte Carlo oracle needs at least one sample")]
    NoSamples,
}
