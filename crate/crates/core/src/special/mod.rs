//! Special functions used by the analytic reference solutions.
//!
//! The Gamma function is delegated to `statrs`; the one-parameter
//! Mittag-Leffler function `E_α(z) = Σ z^k / Γ(αk + 1)` is evaluated here
//! with a region-dependent strategy (see [`mittag_leffler`]).

mod gamma;
mod mittag_leffler;
mod quadrature;

pub use gamma::{gamma, ln_gamma, reciprocal_gamma};
pub use mittag_leffler::{mittag_leffler, mittag_leffler_neg, MlQuery};
pub use quadrature::integrate;
