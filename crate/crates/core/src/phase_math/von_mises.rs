//! Von Mises distribution on a single branch `[mean − π, mean + π]`.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{bessel_i0e, MathError};

/// Location and concentration of a Von Mises variable.
///
/// The mean is stored normalized into `[0, 2π)`. The representative passed
/// to [`VonMisesParams::new`] is kept as the centre of the CDF branch. The
/// normalizing constant `2π e^{-κ} I₀(κ)` is computed once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VonMisesParams {
    mean: f64,
    anchor: f64,
    kappa: f64,
    norm: f64,
}

impl VonMisesParams {
    pub fn new(mean: f64, kappa: f64) -> Result<Self, MathError> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(MathError::Concentration(kappa));
        }
        if !mean.is_finite() {
            return Err(MathError::NonFinite("mean"));
        }
        let norm = TAU * bessel_i0e(kappa)?;
        Ok(Self {
            mean: normalize_angle(mean),
            anchor: mean,
            kappa,
            norm,
        })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Density at angle `x` (any representative).
    pub fn density(&self, x: f64) -> f64 {
        self.density_at_offset(x - self.mean)
    }

    fn density_at_offset(&self, d: f64) -> f64 {
        let s = (0.5 * d).sin();
        (-2.0 * self.kappa * s * s).exp() / self.norm
    }

    /// CDF with `x` first reduced into the branch `[μ − π, μ + π]`, where `μ`
    /// is the mean exactly as given to [`VonMisesParams::new`].
    ///
    /// Points already inside the closed branch are used as-is, so both
    /// endpoints are reachable: `cdf(mean − π) = 0` and `cdf(mean + π) = 1`.
    pub fn cdf(&self, x: f64) -> f64 {
        let mut d = x - self.anchor;
        if (PI..=PI + BRANCH_SLACK).contains(&d) {
            d = PI;
        } else if (-PI - BRANCH_SLACK..=-PI).contains(&d) {
            d = -PI;
        } else if !(-PI..=PI).contains(&d) {
            d = (d + PI).rem_euclid(TAU) - PI;
        }
        self.cdf_at_offset(d)
    }

    /// CDF at signed offset `d = x − mean` with no branch reduction: 0 below
    /// the branch, 1 above it.
    pub(crate) fn cdf_at_offset(&self, d: f64) -> f64 {
        if d <= -PI {
            return 0.0;
        }
        if d >= PI {
            return 1.0;
        }
        if d == 0.0 {
            return 0.5;
        }
        let half = self.integrate_from_mean(d.abs());
        let v = if d > 0.0 { 0.5 + half } else { 0.5 - half };
        v.clamp(0.0, 1.0)
    }

    /// ∫₀ᵘ density(mean + t) dt for 0 ≤ u ≤ π.
    fn integrate_from_mean(&self, u: f64) -> f64 {
        // Past κ(1 − cos t) = 40 the remaining mass is below e⁻⁴⁰ relative to
        // the peak, so the upper limit is cut there.
        let cut = if 40.0 / self.kappa >= 2.0 {
            PI
        } else {
            (1.0 - 40.0 / self.kappa).acos()
        };
        let upper = u.min(cut);
        let f = |t: f64| self.density_at_offset(t);
        adaptive_gauss_kronrod(&f, 0.0, upper, QUAD_TOL, 0)
    }

    /// Draws one angle on the branch `[mean − π, mean + π]` (Best–Fisher
    /// rejection sampler).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.mean + self.sample_offset(rng)
    }

    /// Draws `x − mean` in `[−π, π]`.
    pub(crate) fn sample_offset<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let kappa = self.kappa;
        if kappa < 1e-8 {
            return PI * (2.0 * rng.random::<f64>() - 1.0);
        }
        if kappa > 1e6 {
            let z: f64 = StandardNormal.sample(rng);
            return wrap_pi(z / kappa.sqrt());
        }
        let s = 0.5 / kappa;
        let r = s + (1.0 + s * s).sqrt();
        let w = loop {
            let u: f64 = rng.random();
            let z = (PI * u).cos();
            let w = (1.0 + r * z) / (r + z);
            let y = kappa * (r - w);
            let v: f64 = rng.random();
            if y * (2.0 - y) - v >= 0.0 || (y / v).ln() + 1.0 - y >= 0.0 {
                break w;
            }
        };
        let angle = w.clamp(-1.0, 1.0).acos();
        if rng.random::<f64>() < 0.5 {
            -angle
        } else {
            angle
        }
    }
}

/// `params.cdf(x)`.
pub fn von_mises_cdf(x: f64, params: &VonMisesParams) -> f64 {
    params.cdf(x)
}

/// Absolute tolerance handed to the quadrature; well inside the 1e-9 contract.
const QUAD_TOL: f64 = 1e-13;
const MAX_DEPTH: u32 = 40;
/// Rounding allowance on `x − mean` at the branch ends.
const BRANCH_SLACK: f64 = 1e-12;

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wraps an angle into `[−π, π)`.
pub fn wrap_pi(x: f64) -> f64 {
    let r = (x + PI).rem_euclid(TAU) - PI;
    if r >= PI {
        -PI
    } else {
        r
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
/// Gauss weights at `XGK[1]`, `XGK[3]`, `XGK[5]`, `XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod rule and its embedded 7-point Gauss estimate.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, gauss * h)
}

pub(crate) fn adaptive_gauss_kronrod<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (k, g) = gk15(f, a, b);
    if (k - g).abs() <= tol || depth >= MAX_DEPTH {
        return k;
    }
    let m = 0.5 * (a + b);
    adaptive_gauss_kronrod(f, a, m, 0.5 * tol, depth + 1)
        + adaptive_gauss_kronrod(f, m, b, 0.5 * tol, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Composite Simpson over the raw density exp(κ cos(t − μ)) / (2π I₀(κ)),
    /// sharing no code with the implementation.
    fn simpson_cdf(x: f64, mean: f64, kappa: f64) -> f64 {
        let i0 = crate::phase_math::bessel_i0(kappa).unwrap();
        let lo = mean - PI;
        let n = 200_000;
        let h = (x - lo) / n as f64;
        let f = |t: f64| (kappa * (t - mean).cos()).exp() / (TAU * i0);
        let mut s = f(lo) + f(x);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(lo + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn cdf_at_mean_is_one_half() {
        for &k in &[0.1, 1.0, 16.0, 1e4] {
            let p = VonMisesParams::new(1.3, k).unwrap();
            assert_eq!(p.cdf(1.3), 0.5);
        }
    }

    #[test]
    fn branch_endpoints() {
        for &k in &[0.5, 4.0, 64.0, 1e4] {
            let p = VonMisesParams::new(2.0, k).unwrap();
            assert!(p.cdf(2.0 - PI).abs() < 1e-9);
            assert!((p.cdf(2.0 + PI) - 1.0).abs() < 1e-9);
        }
        // x − mean lands an ulp outside [−π, π] for many means.
        for i in 0..2000 {
            let mean = -PI + TAU * i as f64 / 2000.0;
            let p = VonMisesParams::new(mean, 8.0).unwrap();
            assert_eq!(p.cdf(mean - PI), 0.0, "mean {mean}");
            assert_eq!(p.cdf(mean + PI), 1.0, "mean {mean}");
        }
    }

    #[test]
    fn matches_independent_quadrature() {
        // κ = 4, x = mean + π/2; 30-digit reference 0.996220294441702274...
        let p = VonMisesParams::new(0.7, 4.0).unwrap();
        let got = p.cdf(0.7 + PI / 2.0);
        assert!((got - 0.996_220_294_441_702_3).abs() < 1e-9);
        assert!((got - simpson_cdf(0.7 + PI / 2.0, 0.7, 4.0)).abs() < 1e-9);

        for &(k, x, want) in &[
            (0.5, 0.3, 0.573_472_526_550_816_8),
            (16.0, 0.3, 0.882_145_007_017_911_8),
            (1000.0, 0.3, 1.0),
        ] {
            let p = VonMisesParams::new(0.0, k).unwrap();
            assert!((p.cdf(x) - want).abs() < 1e-9, "kappa {k}");
        }
        for &(k, mean, x) in &[(2.0, 1.0, -1.5), (8.0, 5.0, 4.2), (30.0, 3.0, 3.4)] {
            let p = VonMisesParams::new(mean, k).unwrap();
            let reduced = if x < mean - PI { x + TAU } else { x };
            assert!((p.cdf(x) - simpson_cdf(reduced, mean, k)).abs() < 1e-9);
        }
    }

    #[test]
    fn reduces_into_branch() {
        let p = VonMisesParams::new(0.5, 3.0).unwrap();
        assert!((p.cdf(0.9) - p.cdf(0.9 + TAU)).abs() < 1e-15);
        assert!((p.cdf(0.9) - p.cdf(0.9 - 2.0 * TAU)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_kappa() {
        assert!(VonMisesParams::new(0.0, 0.0).is_err());
        assert!(VonMisesParams::new(0.0, -1.0).is_err());
        assert!(VonMisesParams::new(0.0, f64::NAN).is_err());
        assert!(VonMisesParams::new(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn normalizes_mean() {
        let p = VonMisesParams::new(TAU + 0.25, 1.0).unwrap();
        assert!((p.mean() - 0.25).abs() < 1e-15);
        let q = VonMisesParams::new(-0.25, 1.0).unwrap();
        assert!((q.mean() - (TAU - 0.25)).abs() < 1e-15);
        assert_eq!(VonMisesParams::new(TAU, 1.0).unwrap().mean(), 0.0);
    }

    #[test]
    fn samples_stay_on_branch_and_match_cdf() {
        let p = VonMisesParams::new(4.0, 2.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 200_000;
        let draws: Vec<f64> = (0..n).map(|_| p.sample(&mut rng)).collect();
        assert!(draws.iter().all(|&x| (4.0 - PI..=4.0 + PI).contains(&x)));
        for &q in &[3.0, 3.8, 4.0, 4.5, 5.5] {
            let frac = draws.iter().filter(|&&x| x < q).count() as f64 / n as f64;
            assert!((frac - p.cdf(q)).abs() < 5e-3, "q = {q}");
        }
    }

    #[test]
    fn wrap_helpers() {
        assert_eq!(wrap_pi(PI), -PI);
        assert!((wrap_pi(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((normalize_angle(-0.1) - (TAU - 0.1)).abs() < 1e-15);
    }
}
