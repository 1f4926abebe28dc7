//! Checks that the truncated psi matrix has kernel spanned by the `1_p`
//! block indicators, for every built-in group at small ranks and radii.

use std::time::Instant;

use wreath_bc::bcmap::{truncation_size, verify_kernel_lemma, TruncatedModule};
use wreath_bc::grouprep::{FiniteGroupSpec, Side};

fn main() {
    for spec in FiniteGroupSpec::builtins() {
        for n in 1..=3u32 {
            for r in 0..=2usize {
                let size = truncation_size(spec.irreps().len(), n, r);
                if size.is_none_or(|s| s > 100_000) {
                    println!("{:>3} n={n} r={r}: skipped ({} configs)", spec.name(), size.map_or("huge".into(), |s| s.to_string()));
                    continue;
                }
                let t = Instant::now();
                let m = TruncatedModule::new(&spec, Side::Analytic, n, r).unwrap();
                let cert = verify_kernel_lemma(&m);
                println!(
                    "{:>3} n={n} r={r}: {} configs, kernel rank {}, det {}, holds {} ({:.2?})",
                    spec.name(),
                    m.len(),
                    cert.kernel_rank,
                    cert.det,
                    cert.holds,
                    t.elapsed()
                );
            }
        }
    }
}
