//! Time-fractional sub-diffusion benchmark on `[0, 10]` with a sine initial
//! profile, for every memory policy.

use fracmem::solvers::{analytic_diffusion, DiffusionConfig, DiffusionSolver};
use fracmem::{MemoryPolicy, PolicyKind};

fn main() -> fracmem::Result<()> {
    let t_end = 12.8;
    for kind in PolicyKind::ALL {
        let cfg = DiffusionConfig::benchmark(MemoryPolicy::new(kind, 0.1)?);
        let (length, mu, alpha) = (cfg.length, cfg.mu, cfg.alpha.value());
        let mut s = DiffusionSolver::new(cfg)?;
        print!("{:>16}:", kind.name());
        for t in [1.6, 3.2, 6.4, t_end] {
            s.run_until(t)?;
            let exact = analytic_diffusion(length / 2.0, t, length, mu, alpha)?;
            print!("  t={t:<4} err {:.2e}", (s.center_value() - exact).abs());
        }
        println!("  (peak {} points)", s.history().peak_stored());
    }
    Ok(())
}
