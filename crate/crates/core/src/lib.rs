//! Caputo fractional derivatives of order `0 < α < 1` with bounded memory.
//!
//! The L1 scheme is evaluated over whatever history a [`memory::HistoryBuffer`]
//! retains. Four policies are provided: full memory, fixed memory, a
//! power-law adaptive memory that keeps exact L1 weights on the thinned
//! grid, and the same retention with rescaled Grünwald-Letnikov weights.
//!
//! ```
//! use fracmem::caputo::{evaluate_caputo, FractionalOrder, TimePoint};
//!
//! let a = FractionalOrder::new(0.5).unwrap();
//! let hist: Vec<_> = (0..=10).map(|i| TimePoint::new(i as f64 * 0.1, i as f64 * 0.1)).collect();
//! let d = evaluate_caputo(&hist, a, 1.0).unwrap();
//! assert!((d - 1.128_379_167_095_513).abs() < 1e-14);
//! ```

pub mod analysis;
pub mod caputo;
pub mod error;
pub mod experiment;
pub mod memory;
pub mod solvers;
pub mod special;

pub use caputo::{CaputoEvaluator, FractionalOrder, TimePoint};
pub use error::{FracError, Result};
pub use memory::{HistoryBuffer, MemoryPolicy, PolicyKind};
