//! Grünwald-Letnikov coefficients and their rescaling onto thinned grids.
//!
//! On a uniform grid `D^α f(t^n) ≈ Δt^{-α} Σ_j c_j (f^{n-j} - f^0)` with
//! `c_0 = 1` and `c_j = c_{j-1} (j - 1 - α) / j`. When old samples are thinned,
//! each retained point `t^s` stands for the interval `(t^{s-1}, t^s]` and its
//! coefficient is scaled by the interval length in steps.

use crate::caputo::FractionalOrder;
use crate::error::{FracError, Result};

/// Coefficient `c_{n-k}` of the sample `k` steps into an `n`-step history.
pub fn gl_weight(n: usize, k: usize, a: FractionalOrder) -> Result<f64> {
    if k > n {
        return Err(FracError::InvalidArgument(format!(
            "gl weight index k={k} exceeds n={n}"
        )));
    }
    let alpha = a.value();
    let mut c = 1.0;
    for j in 1..=(n - k) {
        let jf = j as f64;
        c = c * (jf - 1.0 - alpha) / jf;
    }
    Ok(c)
}

/// Coefficient `w` rescaled for a retained point covering `[t_k, t_k1]`.
pub fn scaled_gl_weight(w: f64, t_k: f64, t_k1: f64, dt: f64) -> Result<f64> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(FracError::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    if !(t_k.is_finite() && t_k1.is_finite()) || t_k1 < t_k {
        return Err(FracError::NonMonotoneTime { prev: t_k, next: t_k1 });
    }
    Ok(w * (t_k1 - t_k) / dt)
}

/// Lazily extended table of `c_j`.
#[derive(Debug, Clone)]
pub struct GlCoefficients {
    alpha: f64,
    c: Vec<f64>,
}

impl GlCoefficients {
    pub fn new(a: FractionalOrder) -> Self {
        Self {
            alpha: a.value(),
            c: vec![1.0],
        }
    }

    /// Returns `c_j`, extending the table as needed.
    pub fn get(&mut self, j: usize) -> f64 {
        while self.c.len() <= j {
            let i = self.c.len() as f64;
            let last = self.c[self.c.len() - 1];
            self.c.push(last * (i - 1.0 - self.alpha) / i);
        }
        self.c[j]
    }

    /// Weights `W_s` for the retained points `times[1..]` (oldest first),
    /// relative to the newest time. `out[i]` belongs to `times[i + 1]`.
    pub fn interval_weights(&mut self, times: &[f64], dt: f64, out: &mut Vec<f64>) {
        out.clear();
        let Some(&t_n) = times.last() else { return };
        for w in times.windows(2) {
            let lag = ((t_n - w[1]) / dt).round() as usize;
            out.push(self.get(lag) * (w[1] - w[0]) / dt);
        }
    }

    /// Caputo derivative at the newest of `history` (oldest first, the first
    /// sample being the initial value).
    pub fn evaluate(&mut self, history: &[(f64, f64)], dt: f64) -> Result<f64> {
        if history.len() < 2 {
            return Err(FracError::HistoryTooShort { needed: 2, got: history.len() });
        }
        let times: Vec<f64> = history.iter().map(|p| p.0).collect();
        let mut w = Vec::with_capacity(times.len());
        self.interval_weights(&times, dt, &mut w);
        let f0 = history[0].1;
        let sum: f64 = w
            .iter()
            .zip(&history[1..])
            .map(|(w, p)| w * (p.1 - f0))
            .sum();
        Ok(sum * dt.powf(-self.alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn first_coefficients() {
        let a = order(0.5);
        assert_eq!(gl_weight(5, 5, a).unwrap(), 1.0);
        assert_eq!(gl_weight(5, 4, a).unwrap(), -0.5);
        assert_eq!(gl_weight(5, 3, a).unwrap(), -0.125);
        assert!(gl_weight(2, 3, a).is_err());
    }

    #[test]
    fn recurrence_matches_gamma_form() {
        // c_j = Γ(j - α) / (Γ(-α) Γ(j + 1))
        for alpha in [0.1, 0.5, 0.9] {
            let mut table = GlCoefficients::new(order(alpha));
            for j in 0..=30usize {
                let closed = gamma(j as f64 - alpha) / (gamma(-alpha) * gamma(j as f64 + 1.0));
                let c = table.get(j);
                assert!((c - closed).abs() <= 1e-12 * closed.abs().max(1e-3), "{alpha} {j}");
                assert_eq!(c, gl_weight(j, 0, order(alpha)).unwrap());
            }
        }
    }

    #[test]
    fn magnitudes_decrease() {
        let mut t = GlCoefficients::new(order(0.3));
        for j in 2..200 {
            assert!(t.get(j).abs() < t.get(j - 1).abs());
            assert!(t.get(j) < 0.0);
        }
    }

    #[test]
    fn scaling() {
        assert!((scaled_gl_weight(-0.5, 1.0, 1.4, 0.1).unwrap() + 2.0).abs() < 1e-14);
        assert!(scaled_gl_weight(1.0, 1.0, 0.5, 0.1).is_err());
        assert!(scaled_gl_weight(1.0, 0.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn derivative_of_linear_function_converges() {
        let dt = 1e-3;
        let hist: Vec<(f64, f64)> = (0..=1000).map(|i| (i as f64 * dt, i as f64 * dt)).collect();
        let mut t = GlCoefficients::new(order(0.5));
        let d = t.evaluate(&hist, dt).unwrap();
        let exact = 1.0 / gamma(1.5);
        assert!((d - exact).abs() < 1e-3, "{d} vs {exact}");
    }
}
