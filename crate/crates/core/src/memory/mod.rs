//! History maintenance for the Caputo convolution.
//!
//! Four policies are supported:
//!
//! * [`MemoryPolicy::Full`] keeps every sample.
//! * [`MemoryPolicy::Fixed`] keeps only samples in `[t - T, t]`.
//! * [`MemoryPolicy::AdaptivePresent`] thins old samples on a power law,
//!   grouping them into subsets `U_0..U_L` where `U_l` spans at most
//!   `2^{l-1} T` at spacing `2^{l-1} Δt`. Weights are exact L1 weights on the
//!   resulting non-uniform grid.
//! * [`MemoryPolicy::AdaptiveGl`] retains the same points but weights them
//!   with rescaled Grünwald-Letnikov coefficients.

mod buffer;
mod gl;

pub use buffer::HistoryBuffer;
pub use gl::{gl_weight, scaled_gl_weight, GlCoefficients};

use std::fmt;
use std::str::FromStr;

use crate::error::{FracError, Result};

/// Which maintenance policy governs a history buffer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolicyKind {
    Full,
    Fixed,
    AdaptivePresent,
    AdaptiveGl,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 4] = [
        PolicyKind::Full,
        PolicyKind::Fixed,
        PolicyKind::AdaptivePresent,
        PolicyKind::AdaptiveGl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Full => "full",
            PolicyKind::Fixed => "fixed",
            PolicyKind::AdaptivePresent => "adaptive-present",
            PolicyKind::AdaptiveGl => "adaptive-gl",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = FracError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(PolicyKind::Full),
            "fixed" => Ok(PolicyKind::Fixed),
            "adaptive-present" | "present" | "adaptive" => Ok(PolicyKind::AdaptivePresent),
            "adaptive-gl" | "gl" | "macdonald" => Ok(PolicyKind::AdaptiveGl),
            other => Err(FracError::Config(format!("unknown policy '{other}'"))),
        }
    }
}

/// Memory policy with its memory length `T` (absent for full memory).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MemoryPolicy {
    Full,
    Fixed { memory_length: f64 },
    AdaptivePresent { memory_length: f64 },
    AdaptiveGl { memory_length: f64 },
}

impl MemoryPolicy {
    pub fn new(kind: PolicyKind, memory_length: f64) -> Result<Self> {
        let policy = match kind {
            PolicyKind::Full => MemoryPolicy::Full,
            PolicyKind::Fixed => MemoryPolicy::Fixed { memory_length },
            PolicyKind::AdaptivePresent => MemoryPolicy::AdaptivePresent { memory_length },
            PolicyKind::AdaptiveGl => MemoryPolicy::AdaptiveGl { memory_length },
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn kind(&self) -> PolicyKind {
        match self {
            MemoryPolicy::Full => PolicyKind::Full,
            MemoryPolicy::Fixed { .. } => PolicyKind::Fixed,
            MemoryPolicy::AdaptivePresent { .. } => PolicyKind::AdaptivePresent,
            MemoryPolicy::AdaptiveGl { .. } => PolicyKind::AdaptiveGl,
        }
    }

    pub fn memory_length(&self) -> Option<f64> {
        match *self {
            MemoryPolicy::Full => None,
            MemoryPolicy::Fixed { memory_length }
            | MemoryPolicy::AdaptivePresent { memory_length }
            | MemoryPolicy::AdaptiveGl { memory_length } => Some(memory_length),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.memory_length() {
            Some(t) if !(t > 0.0 && t.is_finite()) => Err(FracError::InvalidArgument(format!(
                "memory length must be positive, got {t}"
            ))),
            _ => Ok(()),
        }
    }

    /// Checks `T = m Δt` for an integer `m >= 1` and returns `m`.
    pub fn steps_per_memory(&self, dt: f64) -> Result<Option<usize>> {
        let Some(t) = self.memory_length() else {
            return Ok(None);
        };
        let m = (t / dt).round();
        if m < 1.0 || ((m * dt - t) / t).abs() > 1e-9 {
            return Err(FracError::InvalidArgument(format!(
                "memory length {t} is not a positive integer multiple of dt={dt}"
            )));
        }
        Ok(Some(m as usize))
    }

    /// Whether evaluation uses rescaled Grünwald-Letnikov weights.
    pub fn uses_gl_weights(&self) -> bool {
        matches!(self, MemoryPolicy::AdaptiveGl { .. })
    }
}

impl fmt::Display for MemoryPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.memory_length() {
            None => write!(f, "{}", self.kind()),
            Some(t) => write!(f, "{}(T={t})", self.kind()),
        }
    }
}
