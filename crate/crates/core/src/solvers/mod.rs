//! Reference applications: time-fractional sub-diffusion on a 1D grid and
//! fractional Kelvin-Voigt creep, both stepping implicitly with the newest
//! convolution term moved to the left-hand side.

mod diffusion;
mod kelvin_voigt;
mod thomas;

pub use diffusion::{analytic_diffusion, DiffusionConfig, DiffusionSolver, GridField};
pub use kelvin_voigt::{analytic_creep, KelvinVoigtConfig, KelvinVoigtSolver};
pub use thomas::{thomas_solve, thomas_solve_into};

use crate::caputo::CaputoEvaluator;
use crate::memory::GlCoefficients;

/// Per-point form of the L1 history sum for a step to `t_new`.
///
/// With `c_k = ω^k / (t^{k+1} - t^k)` over the stored pairs, writes `p` such
/// that `Σ_k c_k (f^{k+1} - f^k) = Σ_j p_j f^j`. Returns `ω^n / Γ(1-α)` for
/// the implicit interval `[t_newest, t_new]` alongside.
pub(crate) fn l1_point_coefficients(
    eval: &CaputoEvaluator,
    times: &[f64],
    t_new: f64,
    pairs: &mut Vec<f64>,
    p: &mut Vec<f64>,
) -> f64 {
    eval.interval_coefficients(times, t_new, pairs);
    p.clear();
    p.resize(times.len(), 0.0);
    for (k, c) in pairs.iter().enumerate() {
        p[k] -= c;
        p[k + 1] += c;
    }
    let t_n = times[times.len() - 1];
    let beta = eval.order().complement();
    (t_new - t_n).powf(beta) / beta * eval.inv_gamma()
}

/// Scaled GL weights `W_s` of the stored points (index 0, the initial
/// sample, gets none) for a step to `t_new`. `ext` is scratch space.
pub(crate) fn gl_point_weights(
    gl: &mut GlCoefficients,
    times: &[f64],
    t_new: f64,
    dt: f64,
    ext: &mut Vec<f64>,
    w: &mut Vec<f64>,
) {
    ext.clear();
    ext.extend_from_slice(times);
    ext.push(t_new);
    gl.interval_weights(ext, dt, w);
    // Drop the implicit point's weight; it is exactly 1 on a uniform base step.
    w.pop();
}
