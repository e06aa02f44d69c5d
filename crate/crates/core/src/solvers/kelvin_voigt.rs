//! Fractional Kelvin-Voigt element under a constant load:
//! `η D^α x + k x = f`, `x(0) = 0`.

use super::{gl_point_weights, l1_point_coefficients};
use crate::caputo::{CaputoEvaluator, FractionalOrder, TimePoint};
use crate::error::{FracError, Result};
use crate::memory::{GlCoefficients, HistoryBuffer, MemoryPolicy};
use crate::special::mittag_leffler_neg;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KelvinVoigtConfig {
    pub eta: f64,
    pub k: f64,
    pub force: f64,
    pub alpha: FractionalOrder,
    pub dt: f64,
    pub policy: MemoryPolicy,
}

impl KelvinVoigtConfig {
    /// `η = k = f = 1`, `α = 0.5`, `Δt = 0.01`.
    pub fn benchmark(policy: MemoryPolicy) -> Self {
        Self {
            eta: 1.0,
            k: 1.0,
            force: 1.0,
            alpha: FractionalOrder::new(0.5).expect("valid order"),
            dt: 0.01,
            policy,
        }
    }

    /// `τ^α = η / k`.
    pub fn tau_alpha(&self) -> f64 {
        self.eta / self.k
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("eta", self.eta), ("k", self.k), ("force", self.force), ("dt", self.dt)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(FracError::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        self.policy.validate()?;
        self.policy.steps_per_memory(self.dt)?;
        Ok(())
    }
}

/// `(f/k) [1 - E_α(-t^α k/η)]`, with `α` a plain number so `α = 1` works.
pub fn analytic_creep(t: f64, eta: f64, k: f64, force: f64, alpha: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(force / k * (1.0 - mittag_leffler_neg(alpha, t.powf(alpha) * k / eta)?))
}

#[derive(Debug, Clone)]
pub struct KelvinVoigtSolver {
    config: KelvinVoigtConfig,
    eval: CaputoEvaluator,
    gl: GlCoefficients,
    history: HistoryBuffer<f64>,
    steps: usize,
    times: Vec<f64>,
    pairs: Vec<f64>,
    coeffs: Vec<f64>,
    ext: Vec<f64>,
}

impl KelvinVoigtSolver {
    pub fn new(config: KelvinVoigtConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            eval: CaputoEvaluator::new(config.alpha),
            gl: GlCoefficients::new(config.alpha),
            history: HistoryBuffer::new(config.policy, TimePoint::new(0.0, 0.0))?,
            config,
            steps: 0,
            times: Vec::new(),
            pairs: Vec::new(),
            coeffs: Vec::new(),
            ext: Vec::new(),
        })
    }

    pub fn config(&self) -> &KelvinVoigtConfig {
        &self.config
    }

    pub fn time(&self) -> f64 {
        self.history.newest().t
    }

    pub fn elongation(&self) -> f64 {
        self.history.newest().value
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn history(&self) -> &HistoryBuffer<f64> {
        &self.history
    }

    pub fn step(&mut self) -> Result<()> {
        let KelvinVoigtConfig { eta, k, force, dt, .. } = self.config;
        let t_new = (self.steps + 1) as f64 * dt;
        self.history.fill_times(&mut self.times);
        let x_n = self.history.newest().value;

        let x_new = if self.config.policy.uses_gl_weights() {
            gl_point_weights(&mut self.gl, &self.times, t_new, dt, &mut self.ext, &mut self.coeffs);
            let mut pts = self.history.iter();
            let x0 = pts.next().expect("buffer is never empty").value;
            let past: f64 = pts.zip(&self.coeffs).map(|(p, w)| w * (p.value - x0)).sum();
            let s = eta * dt.powf(-self.config.alpha.value());
            (force + s * (x0 - past)) / (s + k)
        } else {
            let implicit = l1_point_coefficients(&self.eval, &self.times, t_new, &mut self.pairs, &mut self.coeffs);
            let h = t_new - self.times[self.times.len() - 1];
            let past: f64 = self.history.iter().zip(&self.coeffs).map(|(p, c)| c * p.value).sum();
            let big_h = past * self.eval.inv_gamma();
            let c = implicit / h;
            (force - eta * big_h + eta * c * x_n) / (eta * c + k)
        };
        if !x_new.is_finite() {
            return Err(FracError::NonFinite(format!("elongation at step {}", self.steps + 1)));
        }
        self.steps += 1;
        self.history.push(TimePoint::new(t_new, x_new))
    }

    pub fn run_until(&mut self, t_end: f64) -> Result<()> {
        let target = (t_end / self.config.dt).round() as usize;
        while self.steps < target {
            self.step()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_examples() {
        assert_eq!(analytic_creep(0.0, 1.0, 1.0, 1.0, 0.5).unwrap(), 0.0);
        let v = analytic_creep(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
        let v = analytic_creep(1.0, 1.0, 1.0, 1.0, 0.5).unwrap();
        assert!((v - 0.572_416_4).abs() < 1e-7, "{v}");
    }

    #[test]
    fn zero_load_stays_at_rest() {
        let cfg = KelvinVoigtConfig {
            force: 1e-300,
            ..KelvinVoigtConfig::benchmark(MemoryPolicy::Full)
        };
        let mut s = KelvinVoigtSolver::new(cfg).unwrap();
        s.run_until(0.5).unwrap();
        assert!(s.elongation().abs() < 1e-299);
    }

    #[test]
    fn full_memory_matches_creep_curve() {
        let mut s = KelvinVoigtSolver::new(KelvinVoigtConfig::benchmark(MemoryPolicy::Full)).unwrap();
        let mut prev = 0.0;
        while s.time() < 1.0 - 1e-12 {
            s.step().unwrap();
            let x = s.elongation();
            assert!(x >= prev && x <= 1.0);
            prev = x;
        }
        let exact = analytic_creep(1.0, 1.0, 1.0, 1.0, 0.5).unwrap();
        assert!((s.elongation() - exact).abs() < 5e-3);
    }

    #[test]
    fn gl_and_l1_agree_early() {
        let mut a = KelvinVoigtSolver::new(KelvinVoigtConfig::benchmark(MemoryPolicy::Full)).unwrap();
        let mut b =
            KelvinVoigtSolver::new(KelvinVoigtConfig::benchmark(MemoryPolicy::AdaptiveGl { memory_length: 1.0 })).unwrap();
        a.run_until(0.5).unwrap();
        b.run_until(0.5).unwrap();
        assert!((a.elongation() - b.elongation()).abs() < 0.1_f64.sqrt() * 0.1);
    }
}
