//! Coefficientwise growth monotonicity along the weight order on Dyer
//! graphs, with certified growth-rate intervals.

use dyer::analysis::check_monotonicity;
use dyer::{DyerGraph, ExtNat};

fn triangle(k: u64) -> DyerGraph {
    DyerGraph::new(
        [
            ("s1".into(), ExtNat::Fin(2)),
            ("s2".into(), ExtNat::Fin(2)),
            ("s3".into(), ExtNat::Fin(2)),
        ],
        [
            ("s1".into(), "s3".into(), ExtNat::Fin(3)),
            ("s2".into(), "s3".into(), ExtNat::Fin(k)),
        ],
    )
    .unwrap()
}

fn main() {
    let v = check_monotonicity(&triangle(7), &triangle(8), None, 20).unwrap();
    println!("(2,3,7) vs (2,3,8):");
    println!("  witness: {:?}", v.witness);
    println!("  coefficientwise a(m) <= a'(m): {}", v.coefficientwise_ok);
    println!("  margins a'(m) - a(m): {}", v.margins.join(", "));
    let (lo, hi) = v.tau_g.approx();
    println!("  tau(2,3,7) in [{lo:.9}, {hi:.9}]");
    let (lo, hi) = v.tau_g2.approx();
    println!("  tau(2,3,8) in [{lo:.9}, {hi:.9}]");
}
