//! L1 approximation of the Caputo derivative of `t²` on a uniform grid,
//! against the closed form `2 t^{2-α} / Γ(3-α)`.

use fracmem::caputo::{evaluate_caputo, TimePoint};
use fracmem::special::gamma;
use fracmem::FractionalOrder;

fn main() -> fracmem::Result<()> {
    let t_end: f64 = 1.0;
    println!("{:>6} {:>8} {:>12} {:>10}", "alpha", "n", "L1", "error");
    for alpha in [0.1, 0.5, 0.9] {
        let a = FractionalOrder::new(alpha)?;
        let exact = 2.0 * t_end.powf(2.0 - alpha) / gamma(3.0 - alpha);
        for n in [10usize, 100, 1000] {
            let history: Vec<TimePoint<f64>> = (0..=n)
                .map(|k| {
                    let t = k as f64 * t_end / n as f64;
                    TimePoint::new(t, t * t)
                })
                .collect();
            let d = evaluate_caputo(&history, a, t_end)?;
            println!("{alpha:>6} {n:>8} {d:>12.8} {:>10.2e}", (d - exact).abs());
        }
    }
    Ok(())
}
