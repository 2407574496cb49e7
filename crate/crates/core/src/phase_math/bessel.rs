//! Modified Bessel function of the first kind, order zero.

use super::MathError;

/// Switch from the power series to the asymptotic expansion above this argument.
const SERIES_LIMIT: f64 = 30.0;

/// `I₀(x)`. Overflows to infinity beyond `x ≈ 713`; use [`bessel_i0e`] there.
pub fn bessel_i0(x: f64) -> Result<f64, MathError> {
    let ax = checked_abs(x)?;
    if ax <= SERIES_LIMIT {
        Ok(series(ax))
    } else {
        Ok(asymptotic_scaled(ax) * ax.exp())
    }
}

/// Exponentially scaled `e^{-|x|} I₀(x)`, finite for every finite argument.
pub fn bessel_i0e(x: f64) -> Result<f64, MathError> {
    let ax = checked_abs(x)?;
    if ax <= SERIES_LIMIT {
        Ok(series(ax) * (-ax).exp())
    } else {
        Ok(asymptotic_scaled(ax))
    }
}

fn checked_abs(x: f64) -> Result<f64, MathError> {
    if x.is_finite() {
        // I₀ is even.
        Ok(x.abs())
    } else {
        Err(MathError::BesselDomain(x))
    }
}

/// Σ (x²/4)^k / (k!)²
fn series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term <= sum * 1e-17 {
            return sum;
        }
        k += 1.0;
    }
}

/// Hankel expansion of `e^{-x} I₀(x)`, summed until the terms stop shrinking.
fn asymptotic_scaled(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0_f64;
    loop {
        let next = term * (2.0 * k - 1.0).powi(2) / (k * 8.0 * x);
        if next.abs() >= term.abs() || next.abs() <= sum * 1e-17 {
            if next.abs() < term.abs() {
                sum += next;
            }
            break;
        }
        sum += next;
        term = next;
        k += 1.0;
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}
