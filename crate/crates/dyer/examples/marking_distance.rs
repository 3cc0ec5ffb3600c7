//! Distance between marked groups: the agreement radius of two markings in
//! the space of rank-n marked Dyer systems.

use dyer::words::{marking_agreement_radius, Budgets};
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
    let budgets = Budgets { states: 10_000_000, closure: 1_000_000 };
    for (a, b) in [(7, 8), (7, 20), (7, 7)] {
        let r = marking_agreement_radius(&triangle(a), &triangle(b), 10, &budgets).unwrap();
        println!(
            "(2,3,{a}) vs (2,3,{b}): agreement radius {}{}, metric bound e^-{r} = {:.2e}",
            r,
            if r == 10 { " (= R_max)" } else { "" },
            (-(r as f64)).exp()
        );
    }
}
