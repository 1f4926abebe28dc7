//! Builds small telescopes, computes their cellular homology and checks the
//! two actions on them.

use std::time::Instant;

use wreath_bc::grouprep::FiniteGroupSpec;
use wreath_bc::telescope::{
    build_telescope, check_conjugation, check_phi_equivariance, fundamental_domain_cells, CellKind, GluingScheme,
};

fn main() {
    let cases = [("Z2", 1, 1, 3), ("Z2", 2, 1, 3), ("Z3", 1, 1, 3), ("Z2", 1, 2, 4), ("S3", 1, 1, 3), ("Z2", 2, 1, 4)];
    for (group, n, r, levels) in cases {
        let spec = FiniteGroupSpec::builtin(group).unwrap();
        let t = Instant::now();
        let cx = match build_telescope(&spec, n, r, levels, GluingScheme::Positive) {
            Ok(cx) => cx,
            Err(e) => {
                println!("{group} n={n} r={r} L={levels}: {e}");
                continue;
            }
        };
        let built = t.elapsed();
        let h = cx.homology().unwrap();
        let homology = t.elapsed();
        let phi = check_phi_equivariance(&cx);
        let conj = check_conjugation(&cx);
        let census = fundamental_domain_cells(&cx);
        println!(
            "{group} n={n} r={r} L={levels} R={}: {} vertices, {} tree edges, {} vertical edges, {} squares",
            cx.support_radius,
            cx.count_by_kind(CellKind::TreeVertex),
            cx.count_by_kind(CellKind::TreeEdge),
            cx.count_by_kind(CellKind::VerticalEdge),
            cx.count_by_kind(CellKind::Square),
        );
        println!(
            "  H0 rank {} H1 rank {} H2 rank {} chi {}; phi-equivariant {} ({} checks), conjugation {} ({} checks)",
            h.groups[0].free_rank,
            h.groups[1].free_rank,
            h.groups[2].free_rank,
            h.euler,
            phi.holds(),
            phi.checked,
            conj.holds(),
            conj.checked
        );
        println!(
            "  domain {:?}, covered {}, truncated {}, violations {}; build {:.2?}, homology {:.2?}, total {:.2?}",
            census.domain,
            census.covered,
            census.truncated,
            census.violations.len(),
            built,
            homology - built,
            t.elapsed()
        );
    }
}
