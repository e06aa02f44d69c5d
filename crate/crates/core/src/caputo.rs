//! Caputo derivative of order `0 < α < 1` by the L1 scheme on arbitrary
//! (possibly non-uniform) stored histories.
//!
//! With samples `(t^k, f^k)` the derivative at the newest time `t^n` is
//!
//! ```text
//! D^α f(t^n) ≈ 1/Γ(1-α) Σ_k ω^k (f^{k+1} - f^k) / (t^{k+1} - t^k)
//! ω^k = ∫_{t^k}^{t^{k+1}} (t^n - τ)^{-α} dτ
//!     = [(t^n - t^k)^{1-α} - (t^n - t^{k+1})^{1-α}] / (1-α)
//! ```
//!
//! The weight integral is always taken in closed form so the scheme stays
//! exact on affine functions for any spacing.

use crate::error::{FracError, Result};
use crate::special::gamma;

/// Fractional order `α` restricted to the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(FracError::InvalidOrder(alpha))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - α`, the exponent of the integrated kernel.
    #[inline]
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = FracError;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

/// One stored sample of the function being differentiated.
#[derive(Debug, Clone, PartialEq)]
pub struct TimePoint<V> {
    pub t: f64,
    pub value: V,
}

impl<V> TimePoint<V> {
    pub fn new(t: f64, value: V) -> Self {
        Self { t, value }
    }
}

/// Limits of one convolution-weight integral: `[t_k, t_k1]` integrated
/// against the kernel centred at `t_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightTriple {
    t_n: f64,
    t_k: f64,
    t_k1: f64,
}

impl WeightTriple {
    pub fn new(t_n: f64, t_k: f64, t_k1: f64) -> Result<Self> {
        let finite = t_n.is_finite() && t_k.is_finite() && t_k1.is_finite();
        if finite && t_k <= t_k1 && t_k1 <= t_n {
            Ok(Self { t_n, t_k, t_k1 })
        } else {
            Err(FracError::InvalidInterval { t_n, t_k, t_k1 })
        }
    }

    pub fn t_n(&self) -> f64 {
        self.t_n
    }

    pub fn t_k(&self) -> f64 {
        self.t_k
    }

    pub fn t_k1(&self) -> f64 {
        self.t_k1
    }
}

/// Closed-form weight `ω = ∫_{t_k}^{t_k1} (t_n - τ)^{-α} dτ`.
pub fn caputo_weight(w: WeightTriple, a: FractionalOrder) -> f64 {
    raw_weight(w.t_n, w.t_k, w.t_k1, a.complement())
}

// Unchecked variant for hot loops; callers guarantee t_k <= t_k1 <= t_n.
#[inline]
pub(crate) fn raw_weight(t_n: f64, t_k: f64, t_k1: f64, beta: f64) -> f64 {
    ((t_n - t_k).powf(beta) - (t_n - t_k1).powf(beta)) / beta
}

/// L1 evaluator with `Γ(1-α)` precomputed.
#[derive(Debug, Clone, Copy)]
pub struct CaputoEvaluator {
    order: FractionalOrder,
    inv_gamma: f64,
}

impl CaputoEvaluator {
    pub fn new(order: FractionalOrder) -> Self {
        Self {
            order,
            inv_gamma: 1.0 / gamma(order.complement()),
        }
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    /// `1 / Γ(1-α)`.
    pub fn inv_gamma(&self) -> f64 {
        self.inv_gamma
    }

    /// L1 derivative at the newest time of a scalar history.
    pub fn evaluate<I>(&self, history: I) -> Result<f64>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let beta = self.order.complement();
        let pts: Vec<(f64, f64)> = history.into_iter().collect();
        check_times(pts.iter().map(|p| p.0), pts.len())?;
        let t_n = pts[pts.len() - 1].0;
        let sum: f64 = pts
            .windows(2)
            .map(|w| {
                let (t0, f0) = w[0];
                let (t1, f1) = w[1];
                raw_weight(t_n, t0, t1, beta) * (f1 - f0) / (t1 - t0)
            })
            .sum();
        Ok(sum * self.inv_gamma)
    }

    /// Per-interval coefficients `ω^k / (t^{k+1} - t^k)` for the intervals
    /// between consecutive `times`, with the kernel centred at `t_n`.
    ///
    /// These depend on times only, so vector histories reuse one set for
    /// every component.
    pub fn interval_coefficients(&self, times: &[f64], t_n: f64, out: &mut Vec<f64>) {
        let beta = self.order.complement();
        out.clear();
        out.extend(
            times
                .windows(2)
                .map(|w| raw_weight(t_n, w[0], w[1], beta) / (w[1] - w[0])),
        );
    }
}

fn check_times<I: Iterator<Item = f64>>(times: I, len: usize) -> Result<()> {
    if len < 2 {
        return Err(FracError::HistoryTooShort { needed: 2, got: len });
    }
    let mut prev = f64::NEG_INFINITY;
    for t in times {
        if !t.is_finite() || t <= prev {
            return Err(FracError::NonMonotoneTime { prev, next: t });
        }
        prev = t;
    }
    Ok(())
}

/// Caputo derivative at `t_n` from a scalar history sorted by time; the
/// newest sample must sit at `t_n`.
pub fn evaluate_caputo(history: &[TimePoint<f64>], a: FractionalOrder, t_n: f64) -> Result<f64> {
    check_newest(history, t_n)?;
    CaputoEvaluator::new(a).evaluate(history.iter().map(|p| (p.t, p.value)))
}

/// `Σ_k ω^k` over the stored intervals. Telescopes to
/// `(t_n - t_0)^{1-α} / (1-α)`.
pub fn weight_sum(times: &[f64], a: FractionalOrder, t_n: f64) -> Result<f64> {
    if times.len() == 1 && times[0] == t_n {
        return Ok(0.0);
    }
    check_times(times.iter().copied(), times.len())?;
    let newest = times[times.len() - 1];
    if newest != t_n {
        return Err(FracError::EvaluationTimeMismatch { t_n, newest });
    }
    let beta = a.complement();
    Ok(times
        .windows(2)
        .map(|w| raw_weight(t_n, w[0], w[1], beta))
        .sum())
}

fn check_newest<V>(history: &[TimePoint<V>], t_n: f64) -> Result<()> {
    match history.last() {
        None => Err(FracError::HistoryTooShort { needed: 2, got: 0 }),
        Some(p) if p.t != t_n => Err(FracError::EvaluationTimeMismatch { t_n, newest: p.t }),
        Some(_) => Ok(()),
    }
}
