//! Mittag-Leffler function on the negative axis.

use fracmem::special::{mittag_leffler, mittag_leffler_neg, MlQuery};

fn main() -> fracmem::Result<()> {
    let xs = [0.1, 1.0, 3.0, 10.0, 50.0];
    print!("{:>6}", "alpha");
    for x in xs {
        print!(" {:>14}", format!("E(-{x})"));
    }
    println!();
    for alpha in [0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
        print!("{alpha:>6}");
        for x in xs {
            print!(" {:>14.8e}", mittag_leffler_neg(alpha, x)?);
        }
        println!();
    }
    // Positive arguments grow like exp(z^{1/α}) / α.
    let v = mittag_leffler(MlQuery::new(0.5, 2.0)?)?;
    println!("E_0.5(2) = {v:.12}");
    // The diffusion benchmark's centre value at t = 12.8.
    println!("E_0.5(-sqrt(12.8)) = {:.10}", mittag_leffler_neg(0.5, 12.8f64.sqrt())?);
    Ok(())
}
