//! One-parameter Mittag-Leffler function `E_α(z) = E_{α,1}(z)`.
//!
//! On the negative real axis the raw power series cancels catastrophically
//! once `|z|^{1/α}` grows (its largest term is of order `exp(|z|^{1/α})`),
//! and the algebraic asymptotic series only becomes usable once its
//! smallest term is negligible. Neither covers the middle ground for `α`
//! near one, so three evaluators are used:
//!
//! * power series while `|z|^{1/α} <= SERIES_LIMIT`;
//! * asymptotic expansion `Σ_{k>=1} (-1)^{k+1} x^{-k} / Γ(1 - αk)` when its
//!   smallest term drops below `ASYMPTOTIC_TOL`;
//! * otherwise the Laplace-type integral representation, valid for
//!   `0 < α < 1`, `x > 0`:
//!
//!   `E_α(-x) = sin(απ)/(απ) ∫_0^∞ exp(-(x s)^{1/α}) / (s² + 2 s cos(απ) + 1) ds`,
//!
//!   integrated with adaptive Gauss-Kronrod.
//!
//! Verified region: `z ∈ [-50, 0]`, `α ∈ [0.1, 1]`, absolute error below
//! `1e-10` (see the oracle tests against `exp` and `e^{x²} erfc(x)`).

use std::f64::consts::PI;

use super::gamma::{gamma, ln_gamma, reciprocal_gamma};
use super::quadrature::integrate;
use crate::error::{FracError, Result};

const SERIES_LIMIT: f64 = 4.0;
const ASYMPTOTIC_TOL: f64 = 1e-16;
const QUAD_TOL: f64 = 1e-14;
const MAX_SERIES_TERMS: usize = 20_000;
const MAX_ASYMPTOTIC_TERMS: usize = 400;
// exp(-50) is far below f64 resolution relative to the integrand peak.
const TAIL_EXPONENT: f64 = 50.0;

/// Argument of the Mittag-Leffler function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlQuery {
    alpha: f64,
    z: f64,
}

impl MlQuery {
    pub fn new(alpha: f64, z: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(FracError::InvalidArgument(format!(
                "mittag-leffler order must lie in (0, 1], got {alpha}"
            )));
        }
        if !z.is_finite() {
            return Err(FracError::UnsupportedMittagLeffler { alpha, z });
        }
        Ok(Self { alpha, z })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Evaluates `E_{α,1}(z)`.
///
/// Negative arguments are fully supported; positive arguments are summed
/// with the (cancellation-free) power series as long as it converges in a
/// bounded number of terms without overflow.
pub fn mittag_leffler(q: MlQuery) -> Result<f64> {
    let MlQuery { alpha, z } = q;
    if z == 0.0 {
        return Ok(1.0);
    }
    if alpha == 1.0 {
        return Ok(z.exp());
    }
    if z > 0.0 {
        let v = series(alpha, z)?;
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(FracError::UnsupportedMittagLeffler { alpha, z })
        };
    }
    let x = -z;
    if x.powf(1.0 / alpha) <= SERIES_LIMIT {
        return series(alpha, z);
    }
    if let Some(v) = asymptotic(alpha, x) {
        return Ok(v);
    }
    integral(alpha, x)
}

/// Convenience wrapper for `E_α(-x)`.
pub fn mittag_leffler_neg(alpha: f64, x: f64) -> Result<f64> {
    mittag_leffler(MlQuery::new(alpha, -x)?)
}

fn series(alpha: f64, z: f64) -> Result<f64> {
    let x = z.abs();
    let ln_x = x.ln();
    // Terms grow until αk ≈ x^{1/α}; only stop once past the peak.
    let peak = x.powf(1.0 / alpha) / alpha;
    let mut sum = 1.0;
    for k in 1..MAX_SERIES_TERMS {
        let kf = k as f64;
        let arg = alpha * kf + 1.0;
        let mag = if arg < 170.0 && k < 300 {
            x.powi(k as i32) / gamma(arg)
        } else {
            (kf * ln_x - ln_gamma(arg)).exp()
        };
        let term = if z < 0.0 && k % 2 == 1 { -mag } else { mag };
        sum += term;
        if kf > peak && mag <= 1e-17 * sum.abs().max(1e-300) {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(FracError::UnsupportedMittagLeffler { alpha, z })
}

fn asymptotic(alpha: f64, x: f64) -> Option<f64> {
    let mut sum = 0.0;
    let mut x_pow = 1.0;
    let mut smallest = f64::INFINITY;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        x_pow /= x;
        let term = x_pow * reciprocal_gamma(1.0 - alpha * k as f64);
        if !term.is_finite() {
            return None;
        }
        let mag = term.abs();
        // 1/Γ vanishes at poles; those zero terms say nothing about convergence.
        if mag == 0.0 {
            continue;
        }
        if mag > smallest * 1e3 {
            // Diverging branch of the series reached without converging.
            return None;
        }
        smallest = smallest.min(mag);
        sum += if k % 2 == 1 { term } else { -term };
        if mag <= ASYMPTOTIC_TOL * sum.abs() {
            return Some(sum);
        }
    }
    None
}

fn integral(alpha: f64, x: f64) -> Result<f64> {
    let (s, c) = (alpha * PI).sin_cos();
    let inv_alpha = 1.0 / alpha;
    let s_max = TAIL_EXPONENT.powf(alpha) / x;
    // s² + 2s cos(απ) + 1 written as (s + cos)² + sin², which keeps its
    // relative accuracy at the sharp minimum for α near one.
    let integrand = |u: f64| (-(x * u).powf(inv_alpha)).exp() / ((u + c) * (u + c) + s * s);

    let mut breaks = vec![0.0, s_max];
    // Denominator minimum (sharp for α near one) and the exp transition.
    for b in [-c, 1.0 / x] {
        if b > 0.0 && b < s_max {
            breaks.push(b);
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += integrate(integrand, w[0], w[1], QUAD_TOL)?;
    }
    Ok(total * s / (alpha * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::erf::erfc;

    fn ml(alpha: f64, z: f64) -> f64 {
        mittag_leffler(MlQuery::new(alpha, z).unwrap()).unwrap()
    }

    // E_{1/2}(-x) = exp(x²) erfc(x). Below x = 3 statrs' erfc (relative
    // accuracy ~1e-11) is the oracle; above it the Laplace continued fraction
    // for the scaled complement, which needs no exponentials.
    fn half_oracle(x: f64) -> f64 {
        if x < 3.0 {
            return (x * x).exp() * erfc(x);
        }
        let mut tail = x;
        for k in (1..400).rev() {
            tail = x + (k as f64 / 2.0) / tail;
        }
        1.0 / (tail * std::f64::consts::PI.sqrt())
    }

    #[test]
    fn value_at_zero_is_one() {
        for a in [0.1, 0.3, 0.5, 0.77, 1.0] {
            assert_eq!(ml(a, 0.0), 1.0);
        }
    }

    #[test]
    fn alpha_one_is_exponential() {
        assert!((ml(1.0, 1.0) - std::f64::consts::E).abs() < 1e-15);
        let mut z = 0.0;
        while z >= -30.0 {
            assert!((ml(1.0, z) - z.exp()).abs() <= 1e-12);
            z -= 0.05;
        }
    }

    #[test]
    fn half_order_example() {
        assert!((ml(0.5, -1.0) - 0.427_583_576_155_807).abs() < 1e-12);
        assert!((half_oracle(1.0) - 0.427_583_576_155_807).abs() < 1e-10);
    }

    #[test]
    fn half_order_matches_erfc_identity() {
        let mut x: f64 = 0.0;
        while x <= 7.0 {
            let err = (ml(0.5, -x) - half_oracle(x)).abs();
            assert!(err <= 1e-10, "x={x} err={err:e}");
            x += 0.01;
        }
    }

    #[test]
    fn half_order_far_field() {
        // The diffusion benchmark needs x up to about 10.2.
        for x in [7.5, 8.0, 9.0, 10.12, 15.0, 30.0, 50.0] {
            let err = (ml(0.5, -x) - half_oracle(x)).abs();
            assert!(err <= 1e-10, "x={x} err={err:e}");
        }
    }

    #[test]
    fn near_one_matches_exponential_limit() {
        // Continuity in α: E_{0.999}(z) stays close to e^z.
        for z in [-0.5, -2.0, -5.0] {
            assert!((ml(0.999, z) - f64::exp(z)).abs() < 5e-3);
        }
    }

    #[test]
    fn methods_agree_at_switch_points() {
        // Series and integral representation agree where both are accurate.
        for alpha in [0.3, 0.5, 0.7, 0.9] {
            let x = 3.0f64.powf(alpha);
            let s = series(alpha, -x).unwrap();
            let i = integral(alpha, x).unwrap();
            assert!((s - i).abs() < 1e-12, "alpha={alpha} {s} {i}");
        }
    }

    #[test]
    fn high_precision_references() {
        // 30-digit values, cross-checked against the power series in
        // extended precision where it converges.
        let table = [
            (0.1, 0.5, 0.654_324_460_288_001_9),
            (0.1, 3.0, 0.238_559_349_782_538_56),
            (0.1, 10.0, 0.085_696_957_010_654_69),
            (0.1, 50.0, 0.018_378_057_012_219_195),
            (0.3, 3.0, 0.211_802_633_196_435_78),
            (0.3, 30.0, 0.025_182_617_502_927_663),
            (0.7, 3.0, 0.137_897_109_665_027_08),
            (0.7, 50.0, 0.006_793_665_670_383_094),
            (0.9, 10.0, 0.012_820_606_051_102_1),
            (0.9, 30.0, 0.003_713_707_698_459_852),
            (0.99, 3.0, 0.053_451_867_506_199_627),
            (0.99, 10.0, 0.001_347_863_806_083_208_4),
            (0.99, 50.0, 0.000_209_576_499_006_007_7),
        ];
        for (a, x, expect) in table {
            let err = (ml(a, -x) - expect).abs();
            assert!(err <= 1e-10, "alpha={a} x={x} err={err:e}");
        }
    }

    #[test]
    fn monotone_and_bounded_on_negative_axis() {
        for a in [0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
            let mut prev = 1.0;
            for i in 1..=1000 {
                let v = ml(a, -0.05 * i as f64);
                assert!(v > 0.0 && v <= prev + 1e-12, "alpha={a} z={}", -0.05 * i as f64);
                prev = v;
            }
        }
    }

    #[test]
    fn rejects_bad_order() {
        assert!(MlQuery::new(0.0, -1.0).is_err());
        assert!(MlQuery::new(1.2, -1.0).is_err());
        assert!(MlQuery::new(0.5, f64::NAN).is_err());
    }

    #[test]
    fn positive_argument_series() {
        // E_{1/2}(x) = exp(x²) erfc(-x)
        let x: f64 = 1.3;
        let expect = (x * x).exp() * erfc(-x);
        assert!((ml(0.5, x) - expect).abs() < 1e-10 * expect);
    }
}
