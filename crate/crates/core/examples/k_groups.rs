//! K-group bases on both sides, with a coinvariance witness for one
//! non-canonical configuration.

use wreath_bc::bcmap::{check_witness, coinvariance_witness, fmt_rational, k_report};
use wreath_bc::grouprep::{FiniteGroupSpec, Side};
use wreath_bc::orbits::Config;

fn main() {
    let spec = FiniteGroupSpec::builtin("S3").unwrap();
    for side in [Side::Analytic, Side::Topological] {
        let report = k_report(&spec, side, 1, 1).unwrap();
        println!(
            "{side}: K0 basis of {} elements (torsion-free {}), K1 = Z^{} generated by {}",
            report.k0.basis.len(),
            report.is_torsion_free(),
            report.k1.rank,
            report.k1.generators.join(", ")
        );
        for (c, t) in report.k0.basis.iter().zip(&report.traces).take(6) {
            println!("  {} trace {}", c.render(&report.labels), fmt_rational(t));
        }
    }
    let labels = spec.labels(Side::Analytic);
    let x = Config::parse("{a1:e_std,a1*a1:e_sgn}", 1, &labels).unwrap();
    let (c, w) = coinvariance_witness(&x);
    println!("x = {} is equivalent to {}", x.render(&labels), c.render(&labels));
    for (j, m, k) in &w.terms {
        println!("  {k} * (m - a{j} m) with m = {}", m.render(&labels));
    }
    println!("witness checks: {}", check_witness(&x, &c, &w));
}
