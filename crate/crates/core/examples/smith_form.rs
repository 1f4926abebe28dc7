//! Smith normal form with transforms, kernel basis and cokernel of a small
//! integer matrix, plus the text round trip.

use wreath_bc::intlin::{cokernel_invariants, kernel_basis, smith, IntMatrix};

fn main() {
    let a = IntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith(&a);
    println!("diagonal: {:?}", s.diag.iter().map(|d| d.to_string()).collect::<Vec<_>>());
    let check = &(&s.u * &a) * &s.v;
    println!("U A V = D: {}", check == s.d_matrix());
    let (free, torsion) = cokernel_invariants(&a);
    println!("cokernel: Z^{free} + {}", torsion.iter().map(|t| format!("Z/{t}")).collect::<Vec<_>>().join(" + "));

    let b = IntMatrix::from_dense(&[vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![-1, 0, 1, 0]]);
    for k in kernel_basis(&b) {
        println!("kernel vector: {:?}", k.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    let text = b.to_text();
    print!("{text}");
    println!("round trip: {}", IntMatrix::from_text(&text).unwrap() == b);
}
