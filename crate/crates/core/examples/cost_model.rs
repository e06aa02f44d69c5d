//! Convolution-term counts of each policy against the closed forms.

use fracmem::analysis::op_count;
use fracmem::{HistoryBuffer, MemoryPolicy, PolicyKind, TimePoint};

fn main() -> fracmem::Result<()> {
    let m = 10u64;
    for kind in [PolicyKind::Full, PolicyKind::Fixed, PolicyKind::AdaptivePresent] {
        let mut buf = HistoryBuffer::new(MemoryPolicy::new(kind, m as f64)?, TimePoint::new(0.0, ()))?;
        let mut terms = 0u64;
        let mut n = 0u64;
        print!("{:>16}:", kind.name());
        for levels in 0..=6u32 {
            while n < m << levels {
                n += 1;
                buf.push(TimePoint::new(n as f64, ()))?;
                terms += buf.count_conv_terms() as u64;
            }
            print!("  L={levels} {terms}/{}", op_count(kind, m, levels));
        }
        println!();
    }
    Ok(())
}
