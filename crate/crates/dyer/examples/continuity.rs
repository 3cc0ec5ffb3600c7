//! Growth-rate convergence along a weight-monotone family: the (2,3,k)
//! triangle groups approaching the (2,3,inf) limit.

use dyer::analysis::{default_tol, continuity_experiment, GraphFamily, Slot};
use dyer::model::{RawEdge, RawGraph, RawVertex};
use dyer::ExtNat;

fn main() {
    let base = RawGraph {
        vertices: (1..=3)
            .map(|i| RawVertex { id: format!("s{i}"), order: ExtNat::Fin(2) })
            .collect(),
        edges: vec![
            RawEdge { u: "s1".into(), v: "s3".into(), m: ExtNat::Fin(3) },
            RawEdge { u: "s2".into(), v: "s3".into(), m: ExtNat::Fin(7) },
        ],
    };
    let limit = {
        let mut raw = base.clone();
        raw.edges[1].m = ExtNat::Inf;
        raw.compile().unwrap()
    };
    let family =
        GraphFamily::new(base, vec![Slot::Edge("s2".into(), "s3".into())], limit).unwrap();
    let report =
        continuity_experiment(&family, &[7, 10, 15, 20, 30, 50], &default_tol()).unwrap();
    println!("triangle family (2,3,k), limit (2,3,inf):");
    print!("{}", report.to_csv());
    let (lo, hi) = report.limit.approx();
    println!("limit tau in [{lo:.9}, {hi:.9}]");
}
