//! Loads a group from a TOML document and runs the K-group and trace
//! computations on it. Pass a path, or use the bundled `dicyclic12.toml`.

use std::path::PathBuf;

use wreath_bc::bcmap::{fmt_rational, k_report, trace_image};
use wreath_bc::grouprep::{FiniteGroupSpec, Side};

fn main() {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/dicyclic12.toml"));
    let spec = match FiniteGroupSpec::from_path(&path) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("{} of order {} with {} irreps", spec.name(), spec.order(), spec.irreps().len());
    for p in spec.min_projections() {
        println!("  {} trace {}", p.id, fmt_rational(&p.trace));
    }
    let report = k_report(&spec, Side::Analytic, 1, 1).unwrap();
    println!("K0 basis at n=1, radius 1: {} elements", report.k0.basis.len());
    let trace = trace_image(&spec, 2);
    println!("trace image at bound 2: {} (predicted {})", fmt_rational(&trace.generated), fmt_rational(&trace.predicted));
    // the telescope needs a multiplication table, which documents do not carry
    println!("telescope: {}", wreath_bc::telescope::GroupLaw::for_spec(&spec).unwrap_err());
}
