//! How the four memory policies thin a history of uniform steps.

use fracmem::{HistoryBuffer, MemoryPolicy, PolicyKind, TimePoint};

fn main() -> fracmem::Result<()> {
    let dt = 0.01;
    let steps = 6400;
    for kind in PolicyKind::ALL {
        let mut buf = HistoryBuffer::new(MemoryPolicy::new(kind, 1.0)?, TimePoint::new(0.0, ()))?;
        for n in 1..=steps {
            buf.push(TimePoint::new(n as f64 * dt, ()))?;
        }
        println!("{kind}: {} stored, peak {}, levels {}", buf.count_stored(), buf.peak_stored(), buf.levels());
        if matches!(kind, PolicyKind::AdaptivePresent) {
            for (l, u) in buf.subsets().iter().enumerate() {
                if let (Some(oldest), Some(newest)) = (u.front(), u.back()) {
                    let spacing = if u.len() > 1 { (newest.t - oldest.t) / (u.len() - 1) as f64 } else { 0.0 };
                    println!("  U_{l}: {:>3} points in [{:.2}, {:.2}], spacing {spacing:.2}", u.len(), oldest.t, newest.t);
                }
            }
        }
    }
    Ok(())
}
