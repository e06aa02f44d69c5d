//! Error bounds, cost models and slope fitting for the memory policies.
//!
//! For a history partitioned at `t^0 < ... < t^n` the L1 truncation error is
//! bounded by
//!
//! ```text
//! M / (2Γ(3-α)) Σ_k a^{1-α}{2b + hα} - b^{1-α}{2a - hα}
//! a = t^n - t^k,  b = t^n - t^{k+1},  h = a - b
//! ```
//!
//! with `M = max |f''|`. Each summand equals `2(2-α)` times the trapezoid
//! error of `∫ (t^n - τ)^{1-α} dτ` over the interval, which is positive for
//! every `0 < α < 1`; this is what makes the bound hold.

use crate::caputo::FractionalOrder;
use crate::error::{FracError, Result};
use crate::memory::PolicyKind;
use crate::special::gamma;

/// Bound on the error from discarding history older than `t - T`, for a
/// function with `|f'| <= m_bound`.
pub fn fixed_memory_bound(m_bound: f64, t: f64, memory_length: f64, a: FractionalOrder) -> Result<f64> {
    if !(memory_length > 0.0) || memory_length > t * (1.0 + 1e-12) {
        return Err(FracError::InvalidArgument(format!(
            "memory length {memory_length} must lie in (0, t={t}]"
        )));
    }
    let beta = a.complement();
    let diff = (t.powf(beta) - memory_length.powf(beta)).max(0.0);
    Ok(m_bound / gamma(2.0 - a.value()) * diff)
}

// Summand of the interval bound in units of `a^{2-α}`; `b = a - h`.
fn interval_term(a: f64, b: f64, alpha: f64) -> f64 {
    let h = a - b;
    let beta = 1.0 - alpha;
    if a <= 0.0 {
        return 0.0;
    }
    let x = h / a;
    if x >= 0.1 {
        return a.powf(beta) * (2.0 * b + h * alpha) - b.powf(beta) * (2.0 * a - h * alpha);
    }
    // Close intervals cancel in the direct form; expand in x = h/a instead.
    // The summand is 2(2-α) a^{2-α} Σ_{j>=3} d_j x^j with
    // d_j = (-1)^{j+1} [C(β+1, j)/(β+1) - C(β, j-1)/2].
    let mut c_hi = 1.0; // C(β+1, j)
    let mut c_lo = 1.0; // C(β, j-1)
    let mut c_hi_prev;
    let mut sum = 0.0;
    let mut xj = x;
    for j in 1..60 {
        let jf = j as f64;
        c_hi_prev = c_hi;
        c_hi = c_hi_prev * (beta + 1.0 - (jf - 1.0)) / jf;
        if j >= 2 {
            c_lo *= (beta - (jf - 2.0)) / (jf - 1.0);
        }
        if j >= 3 {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            let d = sign * (c_hi / (beta + 1.0) - 0.5 * c_lo);
            let term = d * xj;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
        xj *= x;
    }
    2.0 * (2.0 - alpha) * a.powf(beta + 1.0) * sum
}

/// Bound on the L1 error at the newest of `times`, for `|f''| <= m_bound`,
/// over an arbitrary partition.
pub fn l1_error_bound(times: &[f64], m_bound: f64, a: FractionalOrder) -> Result<f64> {
    if times.len() < 2 {
        return Err(FracError::HistoryTooShort { needed: 2, got: times.len() });
    }
    let t_n = times[times.len() - 1];
    let alpha = a.value();
    let mut sum = 0.0;
    for w in times.windows(2) {
        if !(w[1] > w[0]) {
            return Err(FracError::NonMonotoneTime { prev: w[0], next: w[1] });
        }
        sum += interval_term(t_n - w[0], t_n - w[1], alpha);
    }
    Ok(m_bound / (2.0 * gamma(3.0 - alpha)) * sum)
}

/// Trapezoid-rule error of `∫_{t_k}^{t_k1} (t_n - τ)^{1-α} dτ`, in closed form.
pub fn trapezoid_error(t_n: f64, t_k: f64, t_k1: f64, a: FractionalOrder) -> Result<f64> {
    crate::caputo::WeightTriple::new(t_n, t_k, t_k1)?;
    let alpha = a.value();
    Ok(interval_term(t_n - t_k, t_n - t_k1, alpha) / (2.0 * (2.0 - alpha)))
}

fn ab_sum(m: usize, offset: usize, alpha: f64) -> f64 {
    let beta = 1.0 - alpha;
    (0..m)
        .map(|k| {
            let p = (offset + m - k) as f64;
            let q = p - 1.0;
            if q == 0.0 {
                // (t^n - t^{k+1})^{1-α} vanishes at the newest point, also as α → 1.
                p.powf(beta) * alpha
            } else if alpha == 0.0 || alpha == 1.0 {
                p.powf(beta) * (2.0 * q + alpha) - q.powf(beta) * (2.0 * p - alpha)
            } else {
                interval_term(p, q, alpha)
            }
        })
        .sum()
}

/// `A(m, α)`: error of `U_0` in units of `Δt^{2-α}`.
pub fn a_func(m: usize, alpha: f64) -> f64 {
    ab_sum(m, 0, alpha)
}

/// `B(m, α)`: error of each older subset in units of its own spacing to the
/// `2-α`.
pub fn b_func(m: usize, alpha: f64) -> f64 {
    ab_sum(m, m, alpha)
}

/// Inputs of the closed-form adaptive bound at `t = 2^L T`, `T = m Δt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBoundInputs {
    pub m_bound: f64,
    pub dt: f64,
    pub m: usize,
    pub levels: u32,
    pub alpha: FractionalOrder,
}

impl ErrorBoundInputs {
    pub fn memory_length(&self) -> f64 {
        self.m as f64 * self.dt
    }

    pub fn time(&self) -> f64 {
        self.memory_length() * 2f64.powi(self.levels as i32)
    }
}

/// Adaptive-method bound split by subset.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveBound {
    pub total: f64,
    pub u0: f64,
    /// Contribution of `U_1..U_L`.
    pub subsets: Vec<f64>,
}

pub fn adaptive_bound(inp: &ErrorBoundInputs) -> Result<AdaptiveBound> {
    if inp.m == 0 || !(inp.dt > 0.0) || !(inp.m_bound >= 0.0) {
        return Err(FracError::InvalidArgument(
            "bound inputs need m >= 1, dt > 0 and M >= 0".into(),
        ));
    }
    let alpha = inp.alpha.value();
    let p = 2.0 - alpha;
    let scale = inp.m_bound / (2.0 * gamma(3.0 - alpha));
    let u0 = scale * inp.dt.powf(p) * a_func(inp.m, alpha);
    let b = b_func(inp.m, alpha);
    let subsets: Vec<f64> = (1..=inp.levels)
        .map(|l| scale * (2f64.powi(l as i32 - 1) * inp.dt).powf(p) * b)
        .collect();
    let total = u0 + subsets.iter().sum::<f64>();
    Ok(AdaptiveBound { total, u0, subsets })
}

/// Bracket for `B(m, α) ≈ c(α) m^{-α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BApprox {
    pub lower: f64,
    pub upper: f64,
}

impl BApprox {
    pub fn contains(&self, v: f64) -> bool {
        v >= self.lower && v <= self.upper
    }
}

pub fn b_approx(m: usize, alpha: f64) -> BApprox {
    let c = alpha * (1.0 - alpha) * (2.0 - alpha) / 6.0;
    let mf = m as f64;
    BApprox {
        lower: c * 2f64.powf(-alpha - 1.0) * mf.powf(-alpha),
        upper: c * mf.powf(-alpha),
    }
}

/// Convolution terms summed over a run to `t = 2^L m Δt`.
pub fn op_count(kind: PolicyKind, m: u64, levels: u32) -> u64 {
    let scale = 1u64 << levels;
    match kind {
        PolicyKind::Full => {
            let n = scale * m;
            n * (n + 1) / 2
        }
        PolicyKind::Fixed => m * (m + 1) / 2 + m * m * (scale - 1),
        PolicyKind::AdaptivePresent | PolicyKind::AdaptiveGl => {
            // Twice the sum keeps the l = 1 term integral.
            let twice: u64 = (1..=levels as u64)
                .map(|l| (1u64 << (l - 1)) * ((2 * l + 1) * m * m + m))
                .sum();
            m * (m + 1) / 2 + twice / 2
        }
    }
}

/// Least-squares line through `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(FracError::DimensionMismatch(format!("{} x vs {} y", x.len(), y.len())));
    }
    if x.len() < 2 || x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(FracError::InvalidArgument("fit needs >= 2 finite points".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FracError::InvalidArgument("fit abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

/// Slope of `log(err)` against `log(h)`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(FracError::InvalidArgument(format!(
            "slope fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(h, e)| !(h > 0.0 && e > 0.0)) {
        return Err(FracError::InvalidArgument("slope fit needs positive values".into()));
    }
    let x: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    Ok(linear_fit(&x, &y)?.slope)
}
