//! `∂^α f/∂t^α = μ ∂²f/∂x²` on `[0, L]` with `f(0) = f(L) = 0` and
//! `f(x, 0) = sin(πx/L)`.

use std::f64::consts::PI;

use super::{gl_point_weights, l1_point_coefficients, thomas_solve_into};
use crate::caputo::{CaputoEvaluator, FractionalOrder, TimePoint};
use crate::error::{FracError, Result};
use crate::memory::{GlCoefficients, HistoryBuffer, MemoryPolicy};
use crate::special::mittag_leffler_neg;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionConfig {
    pub length: f64,
    pub dx: f64,
    pub dt: f64,
    pub mu: f64,
    pub alpha: FractionalOrder,
    pub policy: MemoryPolicy,
}

impl DiffusionConfig {
    /// The standard benchmark: `α = 0.5`, `L = 10`, `Δx = 0.1`, `Δt = 0.01`,
    /// `μ = (L/π)²`.
    pub fn benchmark(policy: MemoryPolicy) -> Self {
        let length = 10.0;
        Self {
            length,
            dx: 0.1,
            dt: 0.01,
            mu: (length / PI).powi(2),
            alpha: FractionalOrder::new(0.5).expect("valid order"),
            policy,
        }
    }

    /// Number of grid intervals `L / Δx`.
    pub fn intervals(&self) -> Result<usize> {
        let n = (self.length / self.dx).round();
        if !(self.length > 0.0 && self.dx > 0.0) || n < 2.0 || ((n * self.dx - self.length) / self.length).abs() > 1e-9 {
            return Err(FracError::InvalidArgument(format!(
                "L={} must be an integer multiple (>= 2) of dx={}",
                self.length, self.dx
            )));
        }
        Ok(n as usize)
    }

    pub fn validate(&self) -> Result<()> {
        self.intervals()?;
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(FracError::InvalidArgument(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(FracError::InvalidArgument(format!("mu must be positive, got {}", self.mu)));
        }
        self.policy.validate()?;
        self.policy.steps_per_memory(self.dt)?;
        Ok(())
    }

    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.dx
    }
}

/// `sin(πx/L) E_α(-μ (π/L)² t^α)`. Takes `α` as a plain number so the
/// classical limit `α = 1` is available.
pub fn analytic_diffusion(x: f64, t: f64, length: f64, mu: f64, alpha: f64) -> Result<f64> {
    let s = (PI * x / length).sin();
    if t == 0.0 {
        return Ok(s);
    }
    let lambda = mu * (PI / length).powi(2);
    Ok(s * mittag_leffler_neg(alpha, lambda * t.powf(alpha))?)
}

/// Values on nodes `0..=N`; both boundary entries stay zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    values: Vec<f64>,
}

impl GridField {
    pub fn zeros(intervals: usize) -> Self {
        Self {
            values: vec![0.0; intervals + 1],
        }
    }

    /// Samples `f` at interior nodes; boundaries are forced to zero.
    pub fn from_fn(intervals: usize, dx: f64, f: impl Fn(f64) -> f64) -> Self {
        let mut values: Vec<f64> = (0..=intervals).map(|i| f(i as f64 * dx)).collect();
        values[0] = 0.0;
        values[intervals] = 0.0;
        Self { values }
    }

    fn from_interior(interior: &[f64]) -> Self {
        let mut values = Vec::with_capacity(interior.len() + 2);
        values.push(0.0);
        values.extend_from_slice(interior);
        values.push(0.0);
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn interior(&self) -> &[f64] {
        &self.values[1..self.values.len() - 1]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Implicit time stepper; L1 weights for full, fixed and present-adaptive
/// memory, scaled GL weights for the GL-adaptive policy.
#[derive(Debug, Clone)]
pub struct DiffusionSolver {
    config: DiffusionConfig,
    eval: CaputoEvaluator,
    gl: GlCoefficients,
    history: HistoryBuffer<Vec<f64>>,
    steps: usize,
    times: Vec<f64>,
    pairs: Vec<f64>,
    coeffs: Vec<f64>,
    ext: Vec<f64>,
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    rhs: Vec<f64>,
    scratch: Vec<f64>,
    solution: Vec<f64>,
}

impl DiffusionSolver {
    /// Starts from `sin(πx/L)`.
    pub fn new(config: DiffusionConfig) -> Result<Self> {
        let n = config.intervals()?;
        let init = GridField::from_fn(n, config.dx, |x| (PI * x / config.length).sin());
        Self::with_initial(config, init)
    }

    pub fn with_initial(config: DiffusionConfig, initial: GridField) -> Result<Self> {
        config.validate()?;
        let n = config.intervals()?;
        if initial.values.len() != n + 1 {
            return Err(FracError::DimensionMismatch(format!(
                "initial field has {} nodes, grid has {}",
                initial.values.len(),
                n + 1
            )));
        }
        let history = HistoryBuffer::new(config.policy, TimePoint::new(0.0, initial.interior().to_vec()))?;
        Ok(Self {
            eval: CaputoEvaluator::new(config.alpha),
            gl: GlCoefficients::new(config.alpha),
            config,
            history,
            steps: 0,
            times: Vec::new(),
            pairs: Vec::new(),
            coeffs: Vec::new(),
            ext: Vec::new(),
            lower: Vec::new(),
            diag: Vec::new(),
            upper: Vec::new(),
            rhs: Vec::new(),
            scratch: Vec::new(),
            solution: Vec::new(),
        })
    }

    pub fn config(&self) -> &DiffusionConfig {
        &self.config
    }

    pub fn time(&self) -> f64 {
        self.history.newest().t
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn history(&self) -> &HistoryBuffer<Vec<f64>> {
        &self.history
    }

    pub fn field(&self) -> GridField {
        GridField::from_interior(&self.history.newest().value)
    }

    /// Value at node `N/2`, which is `x = L/2` when `N` is even.
    pub fn center_value(&self) -> f64 {
        let v = &self.history.newest().value;
        v[(v.len() + 1) / 2 - 1]
    }

    /// Advances one base step `Δt`.
    pub fn step(&mut self) -> Result<()> {
        if self.config.policy.uses_gl_weights() {
            self.assemble_gl();
        } else {
            self.assemble_l1();
        }
        thomas_solve_into(
            &self.lower,
            &self.diag,
            &self.upper,
            &self.rhs,
            &mut self.scratch,
            &mut self.solution,
        )?;
        if self.solution.iter().any(|v| !v.is_finite()) {
            return Err(FracError::NonFinite(format!("diffusion field at step {}", self.steps + 1)));
        }
        self.steps += 1;
        let t_new = self.steps as f64 * self.config.dt;
        self.history.push(TimePoint::new(t_new, self.solution.clone()))?;
        Ok(())
    }

    pub fn run_until(&mut self, t_end: f64) -> Result<()> {
        let target = (t_end / self.config.dt).round() as usize;
        while self.steps < target {
            self.step()?;
        }
        Ok(())
    }

    fn fill_bands(&mut self, off: f64, diag: f64) {
        let n = self.history.newest().value.len();
        self.lower.clear();
        self.lower.resize(n, -off);
        self.upper.clear();
        self.upper.resize(n, -off);
        self.diag.clear();
        self.diag.resize(n, diag);
        self.rhs.clear();
        self.rhs.resize(n, 0.0);
    }

    fn assemble_l1(&mut self) {
        let t_new = (self.steps + 1) as f64 * self.config.dt;
        self.history.fill_times(&mut self.times);
        let t_n = self.times[self.times.len() - 1];
        let h = t_new - t_n;
        let implicit = l1_point_coefficients(&self.eval, &self.times, t_new, &mut self.pairs, &mut self.coeffs);
        let r = self.config.mu * h / (self.config.dx * self.config.dx);
        self.fill_bands(r, implicit + 2.0 * r);

        let scale = -h * self.eval.inv_gamma();
        let rhs = &mut self.rhs;
        for (p, c) in self.history.iter().zip(&self.coeffs) {
            let c = scale * c;
            if c != 0.0 {
                for (r, v) in rhs.iter_mut().zip(&p.value) {
                    *r += c * v;
                }
            }
        }
        for (r, v) in rhs.iter_mut().zip(&self.history.newest().value) {
            *r += implicit * v;
        }
    }

    fn assemble_gl(&mut self) {
        let dt = self.config.dt;
        let t_new = (self.steps + 1) as f64 * dt;
        self.history.fill_times(&mut self.times);
        gl_point_weights(&mut self.gl, &self.times, t_new, dt, &mut self.ext, &mut self.coeffs);
        let r = self.config.mu * dt.powf(self.config.alpha.value()) / (self.config.dx * self.config.dx);
        self.fill_bands(r, 1.0 + 2.0 * r);

        // f^0 - Σ_s W_s (f^s - f^0) = (1 + Σ W_s) f^0 - Σ W_s f^s
        let mut pts = self.history.iter();
        let first = pts.next().expect("buffer is never empty");
        let w0 = 1.0 + self.coeffs.iter().sum::<f64>();
        let rhs = &mut self.rhs;
        for (r, v) in rhs.iter_mut().zip(&first.value) {
            *r = w0 * v;
        }
        for (p, w) in pts.zip(&self.coeffs) {
            for (r, v) in rhs.iter_mut().zip(&p.value) {
                *r -= w * v;
            }
        }
    }
}
