//! Spherical / Euclidean / Neither classification with component types.

use dyer::model::classify_dyer;
use dyer::{DyerGraph, ExtNat};

fn coxeter(n: usize, edges: &[(usize, usize, u64)]) -> DyerGraph {
    let vs: Vec<_> = (1..=n).map(|i| (format!("s{i}"), ExtNat::Fin(2))).collect();
    let es: Vec<_> = edges
        .iter()
        .map(|&(a, b, m)| (format!("s{}", a + 1), format!("s{}", b + 1), ExtNat::Fin(m)))
        .collect();
    DyerGraph::new(vs, es).unwrap()
}

fn main() {
    let cases = vec![
        ("A3 path", coxeter(3, &[(0, 1, 3), (1, 2, 3)])),
        ("F4", coxeter(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)])),
        ("affine ~A2 triangle", coxeter(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)])),
        ("(2,3,7) triangle", coxeter(3, &[(0, 2, 3), (1, 2, 7)])),
        (
            "C2 x C3 x Z",
            DyerGraph::new(
                [
                    ("a".into(), ExtNat::Fin(2)),
                    ("b".into(), ExtNat::Fin(3)),
                    ("c".into(), ExtNat::Inf),
                ],
                [],
            )
            .unwrap(),
        ),
    ];
    for (name, g) in cases {
        let v = classify_dyer(&g);
        let labels: Vec<&str> = v.components.iter().map(|c| c.label.as_str()).collect();
        println!("{name}: {:?} [{}]", v.kind, labels.join(", "));
    }
}
