//! Cayley-ball enumeration: sphere sizes by direct BFS, independent of the
//! growth-series recursion.

use dyer::words::{ball, Budgets};
use dyer::{DyerGraph, ExtNat};

fn main() {
    // PSL(2, Z) as the free product C2 * C3.
    let g = DyerGraph::new(
        [("a".into(), ExtNat::Fin(2)), ("b".into(), ExtNat::Fin(3))],
        [("a".into(), "b".into(), ExtNat::Inf)],
    )
    .unwrap();
    let table = ball(&g, 12, &Budgets::default()).unwrap();
    println!("PSL(2,Z) = C2 * C3:");
    println!("  m   a(m)   b(m)");
    for (m, (a, b)) in table.a.iter().zip(&table.b).enumerate() {
        println!("  {m:<3} {a:<6} {b}");
    }
}
