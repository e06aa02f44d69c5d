//! Creep of a fractional Kelvin-Voigt element under a unit load.

use fracmem::solvers::{analytic_creep, KelvinVoigtConfig, KelvinVoigtSolver};
use fracmem::{MemoryPolicy, PolicyKind};

fn main() -> fracmem::Result<()> {
    let times = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0];
    print!("{:>16}", "t");
    for t in times {
        print!(" {t:>10}");
    }
    println!();
    let b = KelvinVoigtConfig::benchmark(MemoryPolicy::Full);
    print!("{:>16}", "analytic");
    for t in times {
        print!(" {:>10.6}", analytic_creep(t, b.eta, b.k, b.force, b.alpha.value())?);
    }
    println!();
    for kind in PolicyKind::ALL {
        // The fixed window is widened to the adaptive policy's point budget.
        let t_mem = if kind == PolicyKind::Fixed { 5.02 } else { 1.0 };
        let mut s = KelvinVoigtSolver::new(KelvinVoigtConfig::benchmark(MemoryPolicy::new(kind, t_mem)?))?;
        print!("{:>16}", kind.name());
        for t in times {
            s.run_until(t)?;
            print!(" {:>10.6}", s.elongation());
        }
        println!("  peak {}", s.history().peak_stored());
    }
    Ok(())
}
