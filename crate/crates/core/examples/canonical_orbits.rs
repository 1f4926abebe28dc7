//! Canonical forms of configurations under left translation, compared with
//! a brute-force orbit search.

use wreath_bc::freegroup::parse_word;
use wreath_bc::grouprep::{FiniteGroupSpec, Side};
use wreath_bc::orbits::{canonicalize, centre_of_support, count_canonical, enumerate_canonical, orbit_oracle, Config};

fn main() {
    let spec = FiniteGroupSpec::builtin("Z3").unwrap();
    let labels = spec.labels(Side::Analytic);
    let f = Config::parse("{a1*a2:e_chi1,a1*a2*a2:e_chi2,a1*a2^-1:e_chi1}", 2, &labels).unwrap();
    let (c, g) = canonicalize(&f);
    println!("f = {}", f.render(&labels));
    println!("centre {:?}; canonical {} = {g}^-1 . f", centre_of_support(&f).unwrap(), c.render(&labels));
    let moved = f.translate(&parse_word("a2^-1*a1^-1", 2).unwrap());
    println!("translate and canonicalize again: {}", canonicalize(&moved).0.render(&labels));

    for (name, n, r) in [("Z2", 2, 1), ("Z3", 2, 1), ("S3", 1, 2), ("Z2", 2, 2)] {
        let labels = FiniteGroupSpec::builtin(name).unwrap().labels(Side::Analytic);
        let reps = enumerate_canonical(&labels, n, r).unwrap();
        let closed = count_canonical(labels.len(), n, r);
        let oracle = orbit_oracle(&labels, n, r).map(|p| p.class_count().to_string()).unwrap_or_else(|e| e.to_string());
        println!("{name} n={n} r={r}: {} canonical forms, closed form {closed}, oracle {oracle}", reps.len());
    }
}
