use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{FracError, Result};
use crate::memory::PolicyKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    DerivativeError,
    OrderStudy,
    Diffusion,
    KelvinVoigt,
    CostModel,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::DerivativeError,
        ExperimentKind::OrderStudy,
        ExperimentKind::Diffusion,
        ExperimentKind::KelvinVoigt,
        ExperimentKind::CostModel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::DerivativeError => "derivative-error",
            ExperimentKind::OrderStudy => "order-study",
            ExperimentKind::Diffusion => "diffusion",
            ExperimentKind::KelvinVoigt => "kelvin-voigt",
            ExperimentKind::CostModel => "cost-model",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = FracError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| FracError::Config(format!("unknown experiment '{s}'")))
    }
}

/// Function differentiated by the derivative experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    /// `f(t) = t²`, constant second derivative.
    Square,
    /// `f(t) = t`, constant first derivative.
    Linear,
}

impl TestFunction {
    pub fn name(self) -> &'static str {
        match self {
            TestFunction::Square => "square",
            TestFunction::Linear => "linear",
        }
    }

    pub fn eval(self, t: f64) -> f64 {
        match self {
            TestFunction::Square => t * t,
            TestFunction::Linear => t,
        }
    }

    /// Exact Caputo derivative of order `alpha`.
    pub fn caputo(self, t: f64, alpha: f64) -> f64 {
        use crate::special::gamma;
        match self {
            TestFunction::Square => 2.0 * t.powf(2.0 - alpha) / gamma(3.0 - alpha),
            TestFunction::Linear => t.powf(1.0 - alpha) / gamma(2.0 - alpha),
        }
    }
}

impl FromStr for TestFunction {
    type Err = FracError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "square" | "t2" | "t^2" => Ok(TestFunction::Square),
            "linear" | "t" => Ok(TestFunction::Linear),
            other => Err(FracError::Config(format!("unknown function '{other}'"))),
        }
    }
}

/// Fully resolved experiment configuration. List-valued fields expand into
/// one run per combination.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub policies: Vec<PolicyKind>,
    pub alphas: Vec<f64>,
    pub dts: Vec<f64>,
    pub memory_length: f64,
    pub t_end: f64,
    pub function: TestFunction,
    pub length: f64,
    pub dx: f64,
    pub mu: Option<f64>,
    pub eta: f64,
    pub k: f64,
    pub force: f64,
    pub m: u64,
    pub levels: u32,
    /// Give the fixed policy the peak point count the adaptive policy
    /// reaches over the run.
    pub fair_budget: bool,
    /// Approximate number of evenly spaced rows per run.
    pub samples: usize,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Defaults for each experiment.
    pub fn new(experiment: ExperimentKind) -> Self {
        let base = Self {
            experiment,
            policies: vec![PolicyKind::AdaptivePresent],
            alphas: vec![0.5],
            dts: vec![0.01],
            memory_length: 1.0,
            t_end: 32.0,
            function: TestFunction::Square,
            length: 10.0,
            dx: 0.1,
            mu: None,
            eta: 1.0,
            k: 1.0,
            force: 1.0,
            m: 10,
            levels: 3,
            fair_budget: false,
            samples: 256,
            out: None,
        };
        match experiment {
            ExperimentKind::DerivativeError => base,
            ExperimentKind::OrderStudy => Self {
                dts: vec![0.02, 0.01, 0.005, 0.0025],
                alphas: vec![0.1, 0.5, 0.9],
                ..base
            },
            ExperimentKind::Diffusion => Self {
                policies: PolicyKind::ALL.to_vec(),
                memory_length: 0.1,
                t_end: 12.8,
                fair_budget: true,
                ..base
            },
            ExperimentKind::KelvinVoigt => Self {
                policies: PolicyKind::ALL.to_vec(),
                t_end: 16.0,
                fair_budget: true,
                ..base
            },
            ExperimentKind::CostModel => Self {
                policies: vec![PolicyKind::Full, PolicyKind::Fixed, PolicyKind::AdaptivePresent],
                dts: vec![1.0],
                ..base
            },
        }
    }

    /// Defaults overlaid with a `key = value` file.
    pub fn from_file(experiment: ExperimentKind, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| FracError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::new(experiment);
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| FracError::Config(format!("line {}: expected key = value", no + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| FracError::Config(format!("line {}: {}", no + 1, strip(e))))?;
        }
        Ok(())
    }

    /// Sets one key; used for both config files and command-line flags.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.to_ascii_lowercase().replace('_', "-").as_str() {
            "experiment" => {
                let kind: ExperimentKind = value.parse()?;
                if kind != self.experiment {
                    return Err(FracError::Config(format!(
                        "config is for '{kind}' but '{}' was requested",
                        self.experiment
                    )));
                }
            }
            "policy" | "policies" => {
                self.policies = list(value, |s| s.parse())?;
            }
            "alpha" => self.alphas = list(value, num)?,
            "dt" => self.dts = list(value, num)?,
            "memory-length" | "t" => self.memory_length = num(value)?,
            "t-end" => self.t_end = num(value)?,
            "function" => self.function = value.parse()?,
            "length" | "l" => self.length = num(value)?,
            "dx" => self.dx = num(value)?,
            "mu" => self.mu = Some(num(value)?),
            "eta" => self.eta = num(value)?,
            "k" => self.k = num(value)?,
            "force" | "f" => self.force = num(value)?,
            "m" => self.m = int(value)?,
            "levels" => self.levels = int(value)?,
            "fair-budget" => {
                self.fair_budget = match value {
                    "true" | "yes" | "1" => true,
                    "false" | "no" | "0" => false,
                    other => return Err(FracError::Config(format!("fair_budget must be true or false, got '{other}'"))),
                }
            }
            "samples" => self.samples = int(value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(FracError::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn mu(&self) -> f64 {
        self.mu.unwrap_or_else(|| (self.length / std::f64::consts::PI).powi(2))
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(FracError::Config(format!("{name} must be positive, got {v}")))
            }
        };
        if self.policies.is_empty() || self.alphas.is_empty() || self.dts.is_empty() {
            return Err(FracError::Config("policy, alpha and dt lists must be non-empty".into()));
        }
        for &a in &self.alphas {
            if !(a > 0.0 && a < 1.0) {
                return Err(FracError::Config(format!("alpha must lie in (0, 1), got {a}")));
            }
        }
        if self.samples == 0 {
            return Err(FracError::Config("samples must be at least 1".into()));
        }
        match self.experiment {
            ExperimentKind::CostModel => {
                if self.m == 0 {
                    return Err(FracError::Config("m must be at least 1".into()));
                }
                if self.levels > 24 {
                    return Err(FracError::Config(format!("levels={} is too large", self.levels)));
                }
                return Ok(());
            }
            ExperimentKind::Diffusion => {
                positive("length", self.length)?;
                positive("dx", self.dx)?;
                positive("mu", self.mu())?;
                let n = self.length / self.dx;
                if (n - n.round()).abs() > 1e-9 * n || n.round() < 2.0 {
                    return Err(FracError::Config(format!(
                        "length {} must be an integer multiple (>= 2) of dx {}",
                        self.length, self.dx
                    )));
                }
            }
            ExperimentKind::KelvinVoigt => {
                positive("eta", self.eta)?;
                positive("k", self.k)?;
                positive("force", self.force)?;
            }
            _ => {}
        }
        positive("memory_length", self.memory_length)?;
        positive("t_end", self.t_end)?;
        for &dt in &self.dts {
            positive("dt", dt)?;
            multiple("t_end", self.t_end, dt)?;
            if self.policies.iter().any(|&p| p != PolicyKind::Full) {
                multiple("memory_length", self.memory_length, dt)?;
            }
        }
        Ok(())
    }

    /// Resolved configuration as `(key, value)` pairs, in a fixed order.
    pub fn echo(&self) -> Vec<(String, String)> {
        let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut out = vec![
            ("experiment".to_string(), self.experiment.to_string()),
            (
                "policy".to_string(),
                self.policies.iter().map(|p| p.name()).collect::<Vec<_>>().join(","),
            ),
            ("alpha".to_string(), join(&self.alphas)),
            ("dt".to_string(), join(&self.dts)),
        ];
        let mut push = |k: &str, v: String| out.push((k.to_string(), v));
        match self.experiment {
            ExperimentKind::CostModel => {
                push("m", self.m.to_string());
                push("levels", self.levels.to_string());
            }
            _ => {
                push("memory_length", self.memory_length.to_string());
                push("t_end", self.t_end.to_string());
                push("fair_budget", self.fair_budget.to_string());
                push("samples", self.samples.to_string());
            }
        }
        match self.experiment {
            ExperimentKind::DerivativeError | ExperimentKind::OrderStudy => {
                push("function", self.function.name().to_string());
            }
            ExperimentKind::Diffusion => {
                push("length", self.length.to_string());
                push("dx", self.dx.to_string());
                push("mu", self.mu().to_string());
            }
            ExperimentKind::KelvinVoigt => {
                push("eta", self.eta.to_string());
                push("k", self.k.to_string());
                push("force", self.force.to_string());
            }
            ExperimentKind::CostModel => {}
        }
        out
    }
}

fn strip(e: FracError) -> String {
    match e {
        FracError::Config(s) => s,
        other => other.to_string(),
    }
}

fn num(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| FracError::Config(format!("'{s}' is not a number")))
}

fn int<T: FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse::<T>()
        .map_err(|_| FracError::Config(format!("'{s}' is not a non-negative integer")))
}

fn list<T>(s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').map(|p| f(p.trim())).collect()
}

fn multiple(name: &str, v: f64, dt: f64) -> Result<()> {
    let r = v / dt;
    if r.round() < 1.0 || (r - r.round()).abs() > 1e-9 * r.max(1.0) {
        return Err(FracError::Config(format!("{name}={v} is not a multiple of dt={dt}")));
    }
    Ok(())
}
