//! Analytic error bounds of the adaptive and fixed memory methods, next to
//! the measured error for `f = t²` (where the bound is attained).

use fracmem::analysis::{adaptive_bound, b_approx, b_func, fixed_memory_bound, l1_error_bound, ErrorBoundInputs};
use fracmem::experiment::TestFunction;
use fracmem::{CaputoEvaluator, FractionalOrder, HistoryBuffer, MemoryPolicy, TimePoint};

fn main() -> fracmem::Result<()> {
    let alpha = 0.5;
    let a = FractionalOrder::new(alpha)?;
    let dt = 0.01;
    let m = 100;
    let f = TestFunction::Square;
    let eval = CaputoEvaluator::new(a);
    let mut buf = HistoryBuffer::new(MemoryPolicy::AdaptivePresent { memory_length: 1.0 }, TimePoint::new(0.0, 0.0))?;

    println!("{:>6} {:>12} {:>12} {:>12}", "t", "measured", "bound", "closed form");
    let mut n = 0;
    for levels in 0..=6u32 {
        let target = m << levels;
        while n < target {
            n += 1;
            let t = n as f64 * dt;
            buf.push(TimePoint::new(t, f.eval(t)))?;
        }
        let t = n as f64 * dt;
        let d = eval.evaluate(buf.iter().map(|p| (p.t, p.value)))?;
        let measured = (d - f.caputo(t, alpha)).abs();
        let general = l1_error_bound(&buf.times(), 2.0, a)?;
        let closed = adaptive_bound(&ErrorBoundInputs { m_bound: 2.0, dt, m, levels, alpha: a })?;
        println!("{t:>6} {measured:>12.4e} {general:>12.4e} {:>12.4e}", closed.total);
    }

    println!("\nB(m, {alpha}) and its bracket");
    for m in [50, 100, 200, 400, 800] {
        let br = b_approx(m, alpha);
        println!("  m={m:>4}: {:.4e} in [{:.4e}, {:.4e}]", b_func(m, alpha), br.lower, br.upper);
    }

    println!("\nfixed memory, |f'| <= 1, T = 1");
    for t in [1.0, 2.0, 8.0, 64.0] {
        println!("  t={t:>4}: {:.6}", fixed_memory_bound(1.0, t, 1.0, a)?);
    }
    Ok(())
}
