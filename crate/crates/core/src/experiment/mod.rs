//! Experiment runner behind the `fracmem` binary: expands a configuration
//! into runs, executes them in parallel and emits one CSV per run.

mod config;
mod record;

pub use config::{ExperimentConfig, ExperimentKind, TestFunction};
pub use record::{emit_csv, read_csv, write_csv, SimulationRecord, CSV_HEADER};

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::analysis::{fit_loglog_slope, op_count};
use crate::caputo::{CaputoEvaluator, FractionalOrder, TimePoint};
use crate::error::{FracError, Result};
use crate::memory::{GlCoefficients, HistoryBuffer, MemoryPolicy, PolicyKind};
use crate::solvers::{
    analytic_creep, analytic_diffusion, DiffusionConfig, DiffusionSolver, KelvinVoigtConfig, KelvinVoigtSolver,
};

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "FRACMEM_THREADS";

/// One simulation of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub index: usize,
    pub policy: PolicyKind,
    pub alpha: f64,
    pub dt: f64,
    /// Memory length actually used (differs from the configured one for
    /// the fixed policy under a fair budget).
    pub memory_length: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub peak_stored: usize,
    pub final_abs_error: f64,
    pub max_abs_error: f64,
    pub wall_clock: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub spec: RunSpec,
    pub records: Vec<SimulationRecord>,
    pub summary: RunSummary,
}

/// Fitted error-vs-`Δt` slope of one policy and order.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeSummary {
    pub policy: PolicyKind,
    pub alpha: f64,
    pub slope: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub config: ExperimentConfig,
    pub runs: Vec<RunOutput>,
    pub slopes: Vec<SlopeSummary>,
}

impl ExperimentOutput {
    /// Human-readable summary, one fact per line.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.runs {
            out.push(format!(
                "{}: peak_stored={} final_abs_error={:.6e} max_abs_error={:.6e} wall_clock={:.3}s",
                r.spec.label, r.summary.peak_stored, r.summary.final_abs_error, r.summary.max_abs_error, r.summary.wall_clock
            ));
        }
        for s in &self.slopes {
            out.push(format!("slope {} alpha={}: {:.4}", s.policy, s.alpha, s.slope));
        }
        out
    }

    /// Writes every run's CSV. A single run goes to `path`; several runs go
    /// to `{stem}-{label}.{ext}` beside it.
    pub fn write(&self, path: &Path) -> Result<Vec<PathBuf>> {
        let paths: Vec<PathBuf> = if self.runs.len() == 1 {
            vec![path.to_path_buf()]
        } else {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let ext = path.extension().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "csv".into());
            self.runs
                .iter()
                .map(|r| path.with_file_name(format!("{stem}-{}.{ext}", r.spec.label)))
                .collect()
        };
        let base = self.config.echo();
        for (i, (run, p)) in self.runs.iter().zip(&paths).enumerate() {
            let mut comments = base.clone();
            comments.extend([
                ("run".to_string(), run.spec.label.clone()),
                ("run_policy".to_string(), run.spec.policy.to_string()),
                ("run_alpha".to_string(), run.spec.alpha.to_string()),
                ("run_dt".to_string(), run.spec.dt.to_string()),
                ("run_memory_length".to_string(), run.spec.memory_length.to_string()),
            ]);
            if let Err(e) = emit_csv(&run.records, p, &comments) {
                for done in &paths[..i] {
                    let _ = std::fs::remove_file(done);
                }
                return Err(e);
            }
        }
        Ok(paths)
    }
}

/// Reads the thread cap from the environment.
pub fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(FracError::Config(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
    }
}

/// Peak stored count of the adaptive policy over `steps` uniform steps.
pub fn adaptive_peak(memory_length: f64, dt: f64, steps: usize) -> Result<usize> {
    let mut b = HistoryBuffer::new(MemoryPolicy::AdaptivePresent { memory_length }, TimePoint::new(0.0, ()))?;
    for n in 1..=steps {
        b.push(TimePoint::new(n as f64 * dt, ()))?;
    }
    Ok(b.peak_stored())
}

fn steps_for(t: f64, dt: f64) -> usize {
    (t / dt).round() as usize
}

/// Expands the configuration into runs, ordered policy-major.
pub fn plan(cfg: &ExperimentConfig) -> Result<Vec<RunSpec>> {
    let mut specs = Vec::new();
    for &policy in &cfg.policies {
        for &alpha in &cfg.alphas {
            for &dt in &cfg.dts {
                let mut memory_length = match cfg.experiment {
                    ExperimentKind::CostModel => cfg.m as f64 * dt,
                    _ => cfg.memory_length,
                };
                if policy == PolicyKind::Fixed && cfg.fair_budget && cfg.experiment != ExperimentKind::CostModel {
                    let peak = adaptive_peak(cfg.memory_length, dt, steps_for(cfg.t_end, dt))?;
                    memory_length = (peak.max(2) - 1) as f64 * dt;
                }
                let label = if cfg.experiment == ExperimentKind::CostModel {
                    policy.name().to_string()
                } else {
                    format!("{}-a{}-dt{}", policy.name(), alpha, dt)
                };
                specs.push(RunSpec {
                    index: specs.len(),
                    policy,
                    alpha,
                    dt,
                    memory_length,
                    label,
                });
            }
        }
    }
    Ok(specs)
}

/// Steps at which rows are recorded: evenly spaced, every `2^l T`, and the
/// final step.
fn record_steps(total: usize, samples: usize, dt: f64, memory_length: f64, include_zero: bool) -> Vec<usize> {
    let stride = (total / samples).max(1);
    let mut steps: Vec<usize> = (if include_zero { 0 } else { 1 }..=total)
        .filter(|n| n % stride == 0)
        .collect();
    let mut t = memory_length;
    while t <= total as f64 * dt * (1.0 + 1e-12) {
        steps.push(steps_for(t, dt));
        t *= 2.0;
    }
    steps.push(total);
    steps.retain(|&n| include_zero || n > 0);
    steps.sort_unstable();
    steps.dedup();
    steps
}

/// Runs every configured simulation, in parallel across runs.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let specs = plan(cfg)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| FracError::InvalidArgument(format!("thread pool: {e}")))?;
    let results: Vec<Result<RunOutput>> = pool.install(|| specs.par_iter().map(|s| run_one(cfg, s)).collect());
    let runs = results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut slopes = Vec::new();
    if cfg.experiment == ExperimentKind::OrderStudy && cfg.dts.len() >= 3 {
        for &policy in &cfg.policies {
            for &alpha in &cfg.alphas {
                let pts: Vec<(f64, f64)> = runs
                    .iter()
                    .filter(|r| r.spec.policy == policy && r.spec.alpha == alpha)
                    .map(|r| (r.spec.dt, r.summary.final_abs_error))
                    .collect();
                if let Ok(slope) = fit_loglog_slope(&pts) {
                    slopes.push(SlopeSummary { policy, alpha, slope });
                }
            }
        }
    }
    Ok(ExperimentOutput {
        config: cfg.clone(),
        runs,
        slopes,
    })
}

fn run_one(cfg: &ExperimentConfig, spec: &RunSpec) -> Result<RunOutput> {
    let (records, peak_stored) = match cfg.experiment {
        ExperimentKind::DerivativeError => run_derivative(cfg, spec, false)?,
        ExperimentKind::OrderStudy => run_derivative(cfg, spec, true)?,
        ExperimentKind::Diffusion => run_diffusion(cfg, spec)?,
        ExperimentKind::KelvinVoigt => run_kelvin_voigt(cfg, spec)?,
        ExperimentKind::CostModel => run_cost_model(cfg, spec)?,
    };
    let last = records.last().copied();
    let summary = RunSummary {
        peak_stored,
        final_abs_error: last.map_or(0.0, |r| r.abs_error),
        max_abs_error: records.iter().map(|r| r.abs_error).fold(0.0, f64::max),
        wall_clock: last.map_or(0.0, |r| r.wall_clock),
    };
    Ok(RunOutput {
        spec: spec.clone(),
        records,
        summary,
    })
}

fn policy_of(spec: &RunSpec) -> Result<MemoryPolicy> {
    MemoryPolicy::new(spec.policy, spec.memory_length)
}

fn run_derivative(cfg: &ExperimentConfig, spec: &RunSpec, final_only: bool) -> Result<(Vec<SimulationRecord>, usize)> {
    let order = FractionalOrder::new(spec.alpha)?;
    let policy = policy_of(spec)?;
    let f = cfg.function;
    let total = steps_for(cfg.t_end, spec.dt);
    let steps = if final_only {
        vec![total]
    } else {
        record_steps(total, cfg.samples, spec.dt, cfg.memory_length, false)
    };
    let eval = CaputoEvaluator::new(order);
    let mut gl = GlCoefficients::new(order);
    let mut buf = HistoryBuffer::new(policy, TimePoint::new(0.0, f.eval(0.0)))?;
    let mut pairs = Vec::new();
    let mut records = Vec::with_capacity(steps.len());
    let mut next = steps.iter().peekable();
    let start = Instant::now();
    for n in 1..=total {
        let t = n as f64 * spec.dt;
        buf.push(TimePoint::new(t, f.eval(t)))?;
        if next.peek() == Some(&&n) {
            next.next();
            let d = if policy.uses_gl_weights() {
                pairs.clear();
                pairs.extend(buf.iter().map(|p| (p.t, p.value)));
                gl.evaluate(&pairs, spec.dt)?
            } else {
                eval.evaluate(buf.iter().map(|p| (p.t, p.value)))?
            };
            records.push(SimulationRecord::new(
                t,
                d,
                f.caputo(t, spec.alpha),
                buf.count_stored(),
                buf.count_conv_terms(),
                start.elapsed().as_secs_f64(),
            ));
        }
    }
    Ok((records, buf.peak_stored()))
}

fn run_diffusion(cfg: &ExperimentConfig, spec: &RunSpec) -> Result<(Vec<SimulationRecord>, usize)> {
    let dc = DiffusionConfig {
        length: cfg.length,
        dx: cfg.dx,
        dt: spec.dt,
        mu: cfg.mu(),
        alpha: FractionalOrder::new(spec.alpha)?,
        policy: policy_of(spec)?,
    };
    let n_int = dc.intervals()?;
    let x_mid = (n_int / 2) as f64 * cfg.dx;
    let mut solver = DiffusionSolver::new(dc)?;
    let total = steps_for(cfg.t_end, spec.dt);
    let steps = record_steps(total, cfg.samples, spec.dt, cfg.memory_length, true);
    let mut records = Vec::with_capacity(steps.len());
    let mut elapsed = 0.0;
    for &n in &steps {
        let start = Instant::now();
        while solver.steps() < n {
            solver.step()?;
        }
        elapsed += start.elapsed().as_secs_f64();
        let t = solver.time();
        let h = solver.history();
        records.push(SimulationRecord::new(
            t,
            solver.center_value(),
            analytic_diffusion(x_mid, t, cfg.length, cfg.mu(), spec.alpha)?,
            h.count_stored(),
            h.count_conv_terms(),
            elapsed,
        ));
    }
    Ok((records, solver.history().peak_stored()))
}

fn run_kelvin_voigt(cfg: &ExperimentConfig, spec: &RunSpec) -> Result<(Vec<SimulationRecord>, usize)> {
    let kc = KelvinVoigtConfig {
        eta: cfg.eta,
        k: cfg.k,
        force: cfg.force,
        alpha: FractionalOrder::new(spec.alpha)?,
        dt: spec.dt,
        policy: policy_of(spec)?,
    };
    let mut solver = KelvinVoigtSolver::new(kc)?;
    let total = steps_for(cfg.t_end, spec.dt);
    let steps = record_steps(total, cfg.samples, spec.dt, cfg.memory_length, true);
    let mut records = Vec::with_capacity(steps.len());
    let mut elapsed = 0.0;
    for &n in &steps {
        let start = Instant::now();
        while solver.steps() < n {
            solver.step()?;
        }
        elapsed += start.elapsed().as_secs_f64();
        let t = solver.time();
        let h = solver.history();
        records.push(SimulationRecord::new(
            t,
            solver.elongation(),
            analytic_creep(t, cfg.eta, cfg.k, cfg.force, spec.alpha)?,
            h.count_stored(),
            h.count_conv_terms(),
            elapsed,
        ));
    }
    Ok((records, solver.history().peak_stored()))
}

/// Instrumented convolution-term totals against the closed forms, one row
/// per `t = 2^l T`.
fn run_cost_model(cfg: &ExperimentConfig, spec: &RunSpec) -> Result<(Vec<SimulationRecord>, usize)> {
    let m = cfg.m as usize;
    let total = m << cfg.levels;
    let mut buf = HistoryBuffer::new(policy_of(spec)?, TimePoint::new(0.0, ()))?;
    let mut terms: u64 = 0;
    let mut records = Vec::new();
    let mut next_level = 0u32;
    let start = Instant::now();
    for n in 1..=total {
        buf.push(TimePoint::new(n as f64 * spec.dt, ()))?;
        terms += buf.count_conv_terms() as u64;
        if n == m << next_level {
            records.push(SimulationRecord::new(
                n as f64 * spec.dt,
                terms as f64,
                op_count(spec.policy, cfg.m, next_level) as f64,
                buf.count_stored(),
                buf.count_conv_terms(),
                start.elapsed().as_secs_f64(),
            ));
            next_level += 1;
        }
    }
    Ok((records, buf.peak_stored()))
}
