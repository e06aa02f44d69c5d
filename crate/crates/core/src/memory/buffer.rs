use std::collections::VecDeque;

use super::MemoryPolicy;
use crate::caputo::TimePoint;
use crate::error::{FracError, Result};

// Spans equal to the limit up to rounding count as ties and do not trigger
// maintenance.
const TIE_RTOL: f64 = 1e-9;

#[inline]
fn exceeds(span: f64, limit: f64) -> bool {
    span > limit * (1.0 + TIE_RTOL)
}

fn span<V>(u: &VecDeque<TimePoint<V>>) -> f64 {
    match (u.front(), u.back()) {
        (Some(a), Some(b)) => b.t - a.t,
        _ => 0.0,
    }
}

/// Stored history partitioned into subsets `U_0..U_L`.
///
/// `subsets()[0]` is `U_0`, the most recent samples. Every subset keeps
/// its points oldest-first and, read from `U_L` down to `U_0`, the
/// concatenation is strictly increasing in time.
#[derive(Debug, Clone)]
pub struct HistoryBuffer<V> {
    policy: MemoryPolicy,
    subsets: Vec<VecDeque<TimePoint<V>>>,
    len: usize,
    peak: usize,
}

impl<V> HistoryBuffer<V> {
    /// Creates a buffer holding only the initial sample.
    pub fn new(policy: MemoryPolicy, initial: TimePoint<V>) -> Result<Self> {
        policy.validate()?;
        if !(initial.t.is_finite() && initial.t >= 0.0) {
            return Err(FracError::InvalidArgument(format!(
                "initial time must be finite and non-negative, got {}",
                initial.t
            )));
        }
        let mut u0 = VecDeque::new();
        u0.push_back(initial);
        Ok(Self {
            policy,
            subsets: vec![u0],
            len: 1,
            peak: 1,
        })
    }

    pub fn policy(&self) -> MemoryPolicy {
        self.policy
    }

    /// Appends a sample and applies the configured maintenance.
    pub fn push(&mut self, point: TimePoint<V>) -> Result<()> {
        match self.policy {
            MemoryPolicy::Full => self.push_full(point),
            MemoryPolicy::Fixed { memory_length } => self.push_fixed(point, memory_length),
            MemoryPolicy::AdaptivePresent { memory_length }
            | MemoryPolicy::AdaptiveGl { memory_length } => self.push_power_law(point, memory_length),
        }
    }

    /// Appends without eliminating anything.
    pub fn push_full(&mut self, point: TimePoint<V>) -> Result<()> {
        self.check_time(point.t)?;
        self.subsets[0].push_back(point);
        self.len += 1;
        self.record_peak();
        Ok(())
    }

    /// Appends, then drops the oldest samples while `U_0` spans more than
    /// `memory_length`.
    pub fn push_fixed(&mut self, point: TimePoint<V>, memory_length: f64) -> Result<()> {
        self.check_time(point.t)?;
        let len_before = self.len;
        let u0 = &mut self.subsets[0];
        u0.push_back(point);
        let mut removed = 0;
        while exceeds(span(u0), memory_length) {
            u0.pop_front();
            removed += 1;
        }
        self.len = len_before + 1 - removed;
        self.record_peak();
        Ok(())
    }

    /// Power-law maintenance using the policy's memory length.
    pub fn push_adaptive_present(&mut self, point: TimePoint<V>) -> Result<()> {
        let t = self.require_memory_length()?;
        self.push_power_law(point, t)
    }

    /// Same retention as [`push_adaptive_present`](Self::push_adaptive_present);
    /// the policies differ only in how the retained points are weighted.
    pub fn push_adaptive_gl(&mut self, point: TimePoint<V>) -> Result<()> {
        let t = self.require_memory_length()?;
        self.push_power_law(point, t)
    }

    fn require_memory_length(&self) -> Result<f64> {
        self.policy.memory_length().ok_or_else(|| {
            FracError::InvalidArgument("adaptive maintenance requires a memory length".into())
        })
    }

    fn push_power_law(&mut self, point: TimePoint<V>, memory_length: f64) -> Result<()> {
        self.check_time(point.t)?;
        self.subsets[0].push_back(point);
        self.len += 1;

        if exceeds(span(&self.subsets[0]), memory_length) {
            if self.subsets.len() < 2 {
                self.subsets.push(VecDeque::new());
            }
            while exceeds(span(&self.subsets[0]), memory_length) {
                let oldest = self.subsets[0].pop_front().expect("span > 0 implies two points");
                self.subsets[1].push_back(oldest);
            }

            let mut level = 1;
            let mut limit = memory_length;
            while level < self.subsets.len() && exceeds(span(&self.subsets[level]), limit) {
                if level + 1 == self.subsets.len() {
                    self.subsets.push(VecDeque::new());
                }
                while exceeds(span(&self.subsets[level]), limit) {
                    let (lower, upper) = self.subsets.split_at_mut(level + 1);
                    let u = &mut lower[level];
                    let oldest = u.pop_front().expect("span > 0 implies two points");
                    // Eliminate the (old) second-oldest point unless it is the
                    // only one left in the subset.
                    if u.len() >= 2 {
                        u.pop_front();
                        self.len -= 1;
                    }
                    upper[0].push_back(oldest);
                }
                level += 1;
                limit *= 2.0;
            }
        }
        self.record_peak();
        Ok(())
    }

    fn check_time(&self, t: f64) -> Result<()> {
        let newest = self.newest().t;
        if !t.is_finite() || t <= newest {
            return Err(FracError::NonMonotoneTime { prev: newest, next: t });
        }
        Ok(())
    }

    fn record_peak(&mut self) {
        self.peak = self.peak.max(self.len);
    }

    /// Subsets `U_0..U_L`, most recent first.
    pub fn subsets(&self) -> &[VecDeque<TimePoint<V>>] {
        &self.subsets
    }

    /// Stored points, oldest first.
    pub fn iter(&self) -> impl Iterator<Item = &TimePoint<V>> + '_ {
        self.subsets.iter().rev().flat_map(|u| u.iter())
    }

    /// Writes stored times, oldest first, into `out`.
    pub fn fill_times(&self, out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.iter().map(|p| p.t));
    }

    pub fn times(&self) -> Vec<f64> {
        self.iter().map(|p| p.t).collect()
    }

    pub fn newest(&self) -> &TimePoint<V> {
        self.subsets[0].back().expect("U_0 always holds the newest point")
    }

    pub fn oldest(&self) -> &TimePoint<V> {
        self.iter().next().expect("buffer is never empty")
    }

    /// Number of retained points.
    pub fn count_stored(&self) -> usize {
        self.len
    }

    /// Number of consecutive-pair convolution terms one evaluation uses.
    pub fn count_conv_terms(&self) -> usize {
        self.len - 1
    }

    /// Largest stored count seen since construction.
    pub fn peak_stored(&self) -> usize {
        self.peak
    }

    /// Index `L` of the oldest non-empty subset.
    pub fn levels(&self) -> usize {
        self.subsets
            .iter()
            .rposition(|u| !u.is_empty())
            .unwrap_or(0)
    }

    /// Verifies ordering and span bounds; intended for tests and debugging.
    pub fn check_invariants(&self) -> Result<()> {
        let mut prev = f64::NEG_INFINITY;
        let mut count = 0;
        for p in self.iter() {
            if p.t <= prev {
                return Err(FracError::NonMonotoneTime { prev, next: p.t });
            }
            prev = p.t;
            count += 1;
        }
        if count != self.len {
            return Err(FracError::InvalidArgument(format!(
                "stored count {} disagrees with contents {count}",
                self.len
            )));
        }
        if let Some(t) = self.policy.memory_length() {
            let mut limit = t;
            for (l, u) in self.subsets.iter().enumerate() {
                if l >= 2 {
                    limit *= 2.0;
                }
                if exceeds(span(u), limit) {
                    return Err(FracError::InvalidArgument(format!(
                        "subset U_{l} spans {} > {limit}",
                        span(u)
                    )));
                }
            }
        }
        Ok(())
    }
}
