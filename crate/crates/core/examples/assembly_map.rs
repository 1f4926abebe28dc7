//! The assembly map on K-group bases: label-wise from irreps to minimal
//! projections, and v_i to u_i in degree one.

use wreath_bc::bcmap::assembly_map;
use wreath_bc::grouprep::{FiniteGroupSpec, Side};

fn main() {
    for name in ["Z2", "S3", "Q8"] {
        let spec = FiniteGroupSpec::builtin(name).unwrap();
        let report = assembly_map(&spec, 1, 1).unwrap();
        let (top, ana) = (spec.labels(Side::Topological), spec.labels(Side::Analytic));
        println!("{name}: {} basis elements, bijective {}", report.pairs.len(), report.bijective);
        for (f, g) in report.pairs.iter().take(4) {
            println!("  {} -> {}", f.render(&top), g.render(&ana));
        }
        for (v, u) in &report.degree_one {
            println!("  {v} -> {u}");
        }
    }
}
