//! Exact growth series of a few Dyer systems via the parabolic recursion.

use dyer::model::DyerGraph;
use dyer::series::{growth_series, series_coefficients};
use dyer::ExtNat;

fn main() {
    let cases: Vec<(&str, DyerGraph)> = vec![
        (
            "infinite dihedral",
            DyerGraph::new(
                [("s".into(), ExtNat::Fin(2)), ("t".into(), ExtNat::Fin(2))],
                [("s".into(), "t".into(), ExtNat::Inf)],
            )
            .unwrap(),
        ),
        (
            "free group F2",
            DyerGraph::new(
                [("a".into(), ExtNat::Inf), ("b".into(), ExtNat::Inf)],
                [("a".into(), "b".into(), ExtNat::Inf)],
            )
            .unwrap(),
        ),
        (
            "(2,3,7) triangle group",
            DyerGraph::new(
                [
                    ("s1".into(), ExtNat::Fin(2)),
                    ("s2".into(), ExtNat::Fin(2)),
                    ("s3".into(), ExtNat::Fin(2)),
                ],
                [
                    ("s1".into(), "s3".into(), ExtNat::Fin(3)),
                    ("s2".into(), "s3".into(), ExtNat::Fin(7)),
                ],
            )
            .unwrap(),
        ),
    ];
    for (name, g) in cases {
        let f = growth_series(&g).unwrap();
        let table = series_coefficients(&f, 10).unwrap();
        println!("{name}:");
        println!("  f(z) = {}", serde_json::to_string(&f).unwrap());
        let a: Vec<String> = table.a.iter().map(|x| x.to_string()).collect();
        println!("  a(0..=10) = {}", a.join(", "));
    }
}
