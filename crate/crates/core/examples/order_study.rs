//! Convergence in `Δt` of the adaptive method: the fitted order drifts from
//! `2-α` towards 2 as the horizon grows.

use fracmem::experiment::{run_experiment, ExperimentConfig, ExperimentKind};

fn main() -> fracmem::Result<()> {
    for t_end in [32.0, 512.0] {
        let mut cfg = ExperimentConfig::new(ExperimentKind::OrderStudy);
        cfg.t_end = t_end;
        let out = run_experiment(&cfg)?;
        println!("t = {t_end}");
        for s in &out.slopes {
            println!("  alpha {}: order {:.3}", s.alpha, s.slope);
        }
    }
    Ok(())
}
