//! Reduced words in F_2: products, inverses, balls and geodesics.

use wreath_bc::freegroup::{ball, ball_size, bfs_layers, geodesic, parse_word};

fn main() {
    let u = parse_word("a1*a2^-1*a1", 2).unwrap();
    let v = parse_word("a1^-1*a2*a2", 2).unwrap();
    println!("u = {u}, v = {v}");
    println!("u v = {}", &u * &v);
    println!("u^-1 = {}", u.inverse());
    println!("distance(u, v) = {}", u.distance(&v));
    let path = geodesic(&u, &v).unwrap();
    println!("geodesic: {}", path.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" -> "));
    for r in 0..=4 {
        println!("|ball(2, {r})| = {} (enumerated {})", ball_size(2, r), ball(2, r).len());
    }
    for (d, layer) in bfs_layers(2, 2).iter().enumerate() {
        println!("sphere {d}: {}", layer.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "));
    }
}
