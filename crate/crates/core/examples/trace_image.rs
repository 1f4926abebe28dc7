//! The subgroup of Q generated by traces of canonical configurations with
//! bounded support.

use wreath_bc::bcmap::{fmt_rational, trace_image};
use wreath_bc::grouprep::FiniteGroupSpec;

fn main() {
    for spec in FiniteGroupSpec::builtins() {
        let line: Vec<String> = (0..=3)
            .map(|s| {
                let r = trace_image(&spec, s);
                format!("s={s}: {} ({})", fmt_rational(&r.generated), if r.holds() { "ok" } else { "MISMATCH" })
            })
            .collect();
        println!("{:>3}: {}", spec.name(), line.join("  "));
    }
}
