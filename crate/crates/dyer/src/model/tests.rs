use super::*;
use crate::fixtures::{coxeter, graph, w};
use proptest::prelude::*;

/// The running four-vertex example: f = (inf, 2, 2, k) with edges
/// {v1,v2}: inf, {v2,v3}: p, {v3,v4}: inf.  Valid for any k >= 3, p >= 3.
fn example_graph(k: &str, p: &str) -> DyerGraph {
    graph(&["inf", "2", "2", k], &[(0, 1, "inf"), (1, 2, p), (2, 3, "inf")])
}

fn raw(vertices: &[(&str, &str)], edges: &[(&str, &str, &str)]) -> RawGraph {
    RawGraph {
        vertices: vertices
            .iter()
            .map(|&(id, f)| RawVertex { id: id.into(), order: w(f) })
            .collect(),
        edges: edges
            .iter()
            .map(|&(u, v, m)| RawEdge { u: u.into(), v: v.into(), m: w(m) })
            .collect(),
    }
}

#[test]
fn extnat_orders_inf_on_top() {
    assert!(ExtNat::Fin(2) < ExtNat::Fin(3));
    assert!(ExtNat::Fin(1_000_000) < ExtNat::Inf);
    assert_eq!(ExtNat::Inf, ExtNat::Inf);
}

#[test]
fn extnat_serde_round_trip() {
    let vals = [ExtNat::Fin(2), ExtNat::Fin(17), ExtNat::Inf];
    for v in vals {
        let s = serde_json::to_string(&v).unwrap();
        let back: ExtNat = serde_json::from_str(&s).unwrap();
        assert_eq!(v, back);
    }
    assert_eq!(serde_json::to_string(&ExtNat::Inf).unwrap(), "\"inf\"");
    assert_eq!(serde_json::from_str::<ExtNat>("5").unwrap(), ExtNat::Fin(5));
}

#[test]
fn raw_graph_json_format() {
    let text = r#"{
        "vertices": [
            {"id": "v1", "order": "inf"},
            {"id": "v2", "order": 2}
        ],
        "edges": [{"u": "v1", "v": "v2", "m": "inf"}]
    }"#;
    let raw: RawGraph = serde_json::from_str(text).unwrap();
    let g = raw.compile().unwrap();
    assert_eq!(g.rank(), 2);
    assert_eq!(g.vertex_weight(0), ExtNat::Inf);
    assert_eq!(g.pair_weight(0, 1), ExtNat::Inf);
}

#[test]
fn validate_accepts_the_example_graph() {
    let r = raw(
        &[("v1", "inf"), ("v2", "2"), ("v3", "2"), ("v4", "4")],
        &[("v1", "v2", "inf"), ("v2", "v3", "5"), ("v3", "v4", "inf")],
    );
    assert!(r.validate().is_valid());
    assert!(raw(&[("v1", "2")], &[]).validate().is_valid());
}

#[test]
fn validate_collects_violations() {
    let r = raw(&[("v1", "3"), ("v2", "2")], &[("v1", "v2", "4")]);
    let report = r.validate();
    assert_eq!(report.violations.len(), 1);
    assert!(report.violations[0].contains("weight >= 3"));

    let r = raw(
        &[("v1", "2"), ("v1", "2")],
        &[("v1", "v1", "3"), ("v1", "v9", "3")],
    );
    let report = r.validate();
    assert!(!report.is_valid());
    assert!(report.violations.iter().any(|v| v.contains("duplicate")));
    assert!(report.violations.iter().any(|v| v.contains("loop")));
    assert!(report.violations.iter().any(|v| v.contains("unknown")));

    let r = raw(&[("v1", "2"), ("v2", "2")], &[("v1", "v2", "2")]);
    assert!(!r.validate().is_valid());

    let r = raw(
        &[("v1", "2"), ("v2", "2")],
        &[("v1", "v2", "3"), ("v2", "v1", "4")],
    );
    assert!(r.validate().violations.iter().any(|v| v.contains("multiple")));
}

#[test]
fn compile_rejects_invalid_graphs() {
    let r = raw(&[("v1", "3"), ("v2", "2")], &[("v1", "v2", "4")]);
    assert!(matches!(r.compile(), Err(crate::Error::InvalidGraph(_))));
}

#[test]
fn matrix_validation() {
    use ExtNat::{Fin, Inf};
    let good = DyerMatrix {
        n: 2,
        entries: vec![vec![Inf, Fin(2)], vec![Fin(2), Fin(3)]],
    };
    assert!(good.validate().is_valid());
    // Asymmetry, small diagonal, and finite braid weight at order >= 3.
    let bad = DyerMatrix {
        n: 2,
        entries: vec![vec![Fin(2), Fin(3)], vec![Fin(4), Fin(3)]],
    };
    let report = bad.validate();
    assert!(!report.is_valid());
}

#[test]
fn example_graph_matrix_correspondence() {
    let g = example_graph("4", "5");
    let m = graph_to_matrix(&g);
    use ExtNat::{Fin, Inf};
    assert_eq!(
        m.entries,
        vec![
            vec![Inf, Inf, Fin(2), Fin(2)],
            vec![Inf, Fin(2), Fin(5), Fin(2)],
            vec![Fin(2), Fin(5), Fin(2), Inf],
            vec![Fin(2), Fin(2), Inf, Fin(4)],
        ]
    );
    let g2 = matrix_to_graph(&m).unwrap();
    assert_eq!(graph_to_matrix(&g2).entries, m.entries);
}

#[test]
fn partition_examples() {
    let g = example_graph("4", "5");
    assert_eq!(partition_generators(&g), (vec![1, 2], vec![3], vec![0]));
    let g = coxeter(3, &[(0, 1, "3")]);
    assert_eq!(partition_generators(&g), (vec![0, 1, 2], vec![], vec![]));
    let g = graph(&["3", "5", "inf"], &[]);
    assert_eq!(partition_generators(&g), (vec![], vec![0, 1], vec![2]));
}

#[test]
fn induced_coxeter_of_the_example_graph() {
    let g = example_graph("4", "5");
    let (cox, map) = induced_coxeter_graph(&g);
    let d = cox.as_dyer();
    assert_eq!(d.rank(), 6);
    assert_eq!(d.ids(), &["v1", "v2", "v3", "v4", "v1'", "v4'"]);
    assert_eq!(d.pair_weight(0, 4), ExtNat::Inf);
    assert_eq!(d.pair_weight(3, 5), ExtNat::Fin(4));
    assert_eq!(d.pair_weight(0, 1), ExtNat::Inf);
    assert_eq!(d.pair_weight(1, 2), ExtNat::Fin(5));
    assert_eq!(d.pair_weight(2, 3), ExtNat::Inf);
    assert_eq!(map, vec![vec![0, 4], vec![1], vec![2], vec![3, 5]]);
}

#[test]
fn induced_coxeter_fixes_coxeter_graphs() {
    let g = coxeter(3, &[(0, 1, "3"), (1, 2, "4")]);
    let (cox, map) = induced_coxeter_graph(&g);
    assert_eq!(cox.as_dyer(), &g);
    assert_eq!(map, vec![vec![0], vec![1], vec![2]]);
}

#[test]
fn induced_coxeter_of_a_cyclic_group() {
    let g = graph(&["5"], &[]);
    let (cox, map) = induced_coxeter_graph(&g);
    let d = cox.as_dyer();
    assert_eq!(d.rank(), 2);
    assert_eq!(d.pair_weight(0, 1), ExtNat::Fin(5));
    assert_eq!(map, vec![vec![0, 1]]);
}

#[test]
fn induced_coxeter_counts() {
    for g in [
        example_graph("4", "5"),
        graph(&["3", "inf", "2"], &[(1, 2, "inf")]),
        graph(&["7"], &[]),
    ] {
        let (v2, vp, vinf) = partition_generators(&g);
        let (cox, _) = induced_coxeter_graph(&g);
        let d = cox.as_dyer();
        assert_eq!(d.rank(), g.rank() + vp.len() + vinf.len());
        assert_eq!(d.edge_count(), g.edge_count() + vp.len() + vinf.len());
        let _ = v2;
        // Primed copies are leaves.
        for prime in g.rank()..d.rank() {
            let deg = d.edges().filter(|&(u, v, _)| u == prime || v == prime).count();
            assert_eq!(deg, 1);
        }
    }
}

fn kinds(g: &DyerGraph) -> (Kind, Vec<String>) {
    let v = classify_coxeter(&CoxeterGraph::try_from_dyer(g.clone()).unwrap());
    (v.kind, v.components.iter().map(|c| c.label.clone()).collect())
}

#[test]
fn classify_spherical_types() {
    let a3 = coxeter(3, &[(0, 1, "3"), (1, 2, "3")]);
    assert_eq!(kinds(&a3), (Kind::Spherical, vec!["A3".into()]));
    let b3 = coxeter(3, &[(0, 1, "4"), (1, 2, "3")]);
    assert_eq!(kinds(&b3), (Kind::Spherical, vec!["B3".into()]));
    let h3 = coxeter(3, &[(0, 1, "5"), (1, 2, "3")]);
    assert_eq!(kinds(&h3), (Kind::Spherical, vec!["H3".into()]));
    let f4 = coxeter(4, &[(0, 1, "3"), (1, 2, "4"), (2, 3, "3")]);
    assert_eq!(kinds(&f4), (Kind::Spherical, vec!["F4".into()]));
    let h4 = coxeter(4, &[(0, 1, "5"), (1, 2, "3"), (2, 3, "3")]);
    assert_eq!(kinds(&h4), (Kind::Spherical, vec!["H4".into()]));
    let i7 = coxeter(2, &[(0, 1, "7")]);
    assert_eq!(kinds(&i7), (Kind::Spherical, vec!["I2(7)".into()]));
    let d4 = coxeter(4, &[(0, 1, "3"), (0, 2, "3"), (0, 3, "3")]);
    assert_eq!(kinds(&d4), (Kind::Spherical, vec!["D4".into()]));
    let e6 = coxeter(
        6,
        &[(0, 1, "3"), (1, 2, "3"), (2, 3, "3"), (3, 4, "3"), (2, 5, "3")],
    );
    assert_eq!(kinds(&e6), (Kind::Spherical, vec!["E6".into()]));
    // Reducible: A2 x A1 is spherical with two components.
    let a2a1 = coxeter(3, &[(0, 1, "3")]);
    assert_eq!(kinds(&a2a1), (Kind::Spherical, vec!["A2".into(), "A1".into()]));
}

#[test]
fn classify_euclidean_types() {
    let a1t = coxeter(2, &[(0, 1, "inf")]);
    assert_eq!(kinds(&a1t), (Kind::Euclidean, vec!["~A1".into()]));
    let a2t = coxeter(3, &[(0, 1, "3"), (1, 2, "3"), (0, 2, "3")]);
    assert_eq!(kinds(&a2t), (Kind::Euclidean, vec!["~A2".into()]));
    let c2t = coxeter(3, &[(0, 1, "4"), (1, 2, "4")]);
    assert_eq!(kinds(&c2t), (Kind::Euclidean, vec!["~C2".into()]));
    let g2t = coxeter(3, &[(0, 1, "6"), (1, 2, "3")]);
    assert_eq!(kinds(&g2t), (Kind::Euclidean, vec!["~G2".into()]));
    let d4t = coxeter(
        5,
        &[(0, 1, "3"), (0, 2, "3"), (0, 3, "3"), (0, 4, "3")],
    );
    assert_eq!(kinds(&d4t), (Kind::Euclidean, vec!["~D4".into()]));
    let b3t = coxeter(4, &[(0, 1, "3"), (0, 2, "3"), (0, 3, "4")]);
    assert_eq!(kinds(&b3t), (Kind::Euclidean, vec!["~B3".into()]));
    let f4t = coxeter(
        5,
        &[(0, 1, "3"), (1, 2, "4"), (2, 3, "3"), (3, 4, "3")],
    );
    assert_eq!(kinds(&f4t), (Kind::Euclidean, vec!["~F4".into()]));
    // Spherical + Euclidean components: Euclidean overall.
    let mix = coxeter(4, &[(0, 1, "inf"), (2, 3, "3")]);
    assert_eq!(mix.edge_count(), 2);
    assert_eq!(kinds(&mix).0, Kind::Euclidean);
}

#[test]
fn classify_neither() {
    let hyp = coxeter(3, &[(0, 1, "3"), (1, 2, "7")]);
    let (kind, labels) = kinds(&hyp);
    assert_eq!(kind, Kind::Neither);
    assert_eq!(labels, vec!["nonclassified".to_string()]);
    let hyp2 = coxeter(3, &[(0, 1, "inf"), (1, 2, "3")]);
    assert_eq!(kinds(&hyp2).0, Kind::Neither);
    let cycle47 = coxeter(3, &[(0, 1, "3"), (1, 2, "3"), (0, 2, "4")]);
    assert_eq!(kinds(&cycle47).0, Kind::Neither);
    // One bad component poisons the verdict even next to spherical ones.
    let mix = coxeter(5, &[(0, 1, "3"), (2, 3, "3"), (3, 4, "7"), (2, 4, "3")]);
    assert_eq!(kinds(&mix).0, Kind::Neither);
}

#[test]
fn classify_dyer_examples() {
    let g = graph(&["3", "inf"], &[]);
    assert_eq!(classify_dyer(&g).kind, Kind::Spherical);
    let g = graph(&["3", "3"], &[(0, 1, "inf")]);
    assert_eq!(classify_dyer(&g).kind, Kind::Neither);
    let g = graph(&["2", "2", "4"], &[(0, 1, "inf")]);
    let v = classify_dyer(&g);
    assert_eq!(v.kind, Kind::Euclidean);
    assert!(v.components.iter().any(|c| c.label == "C4"));
    let empty = DyerGraph::new(Vec::<(String, ExtNat)>::new(), Vec::new()).unwrap();
    assert_eq!(classify_dyer(&empty).kind, Kind::Spherical);
    // A heavy vertex with any incident edge breaks the product structure:
    // C2 * C3 is a free product of exponential growth.
    let psl = graph(&["2", "3"], &[(0, 1, "inf")]);
    assert_eq!(classify_dyer(&psl).kind, Kind::Neither);
    let ex = example_graph("4", "5");
    assert_eq!(classify_dyer(&ex).kind, Kind::Neither);
    // The same orders with all heavy vertices isolated: C2 x C3 is finite.
    let c2c3 = graph(&["2", "3"], &[]);
    assert_eq!(classify_dyer(&c2c3).kind, Kind::Spherical);
}

#[test]
fn order_morphism_examples() {
    let g = coxeter(2, &[(0, 1, "3")]);
    assert_eq!(find_order_morphism(&g, &g), Some(vec![0, 1]));
    let c3 = graph(&["3"], &[]);
    let c5 = graph(&["5"], &[]);
    assert_eq!(find_order_morphism(&c3, &c5), Some(vec![0]));
    assert_eq!(find_order_morphism(&c5, &c3), None);
    let e7 = coxeter(2, &[(0, 1, "7")]);
    let e3 = coxeter(2, &[(0, 1, "3")]);
    assert!(find_order_morphism(&e7, &e3).is_none());
    assert!(find_order_morphism(&e3, &e7).is_some());
}

#[test]
fn order_morphism_embeds_into_larger_graphs() {
    let a2 = coxeter(2, &[(0, 1, "3")]);
    let triangle = coxeter(3, &[(0, 1, "3"), (1, 2, "3"), (0, 2, "3")]);
    let phi = find_order_morphism(&a2, &triangle).unwrap();
    assert_eq!(phi.len(), 2);
    assert_ne!(phi[0], phi[1]);
    // Non-edges are unconstrained: two commuting vertices embed anywhere.
    let free2 = coxeter(2, &[]);
    assert!(find_order_morphism(&free2, &triangle).is_some());
    // But an edge cannot map to a non-edge.
    let path = coxeter(3, &[(0, 1, "3"), (1, 2, "3")]);
    let disjoint = coxeter(3, &[(0, 1, "3")]);
    assert!(find_order_morphism(&path, &disjoint).is_none());
}

fn check_witness(g: &DyerGraph, g2: &DyerGraph, phi: &[usize]) {
    let mut used = std::collections::HashSet::new();
    for (v, &t) in phi.iter().enumerate() {
        assert!(used.insert(t));
        assert!(g.vertex_weight(v) <= g2.vertex_weight(t));
    }
    for (u, v, m) in g.edges() {
        let m2 = g2.pair_weight(phi[u], phi[v]);
        assert!(m2 >= ExtNat::Fin(3) && m <= m2);
    }
}

#[test]
fn order_is_reflexive_and_transitive_on_samples() {
    let samples = [
        example_graph("4", "5"),
        example_graph("5", "5"),
        example_graph("5", "7"),
        coxeter(3, &[(0, 1, "3"), (1, 2, "4")]),
    ];
    for g in &samples {
        let phi = find_order_morphism(g, g).unwrap();
        check_witness(g, g, &phi);
    }
    // k=4,p=5 <= k=5,p=5 <= k=5,p=7: witnesses compose.
    let (a, b, c) = (&samples[0], &samples[1], &samples[2]);
    let ab = find_order_morphism(a, b).unwrap();
    let bc = find_order_morphism(b, c).unwrap();
    check_witness(a, b, &ab);
    check_witness(b, c, &bc);
    let composed: Vec<usize> = ab.iter().map(|&v| bc[v]).collect();
    check_witness(a, c, &composed);
}

fn arb_matrix() -> impl Strategy<Value = DyerMatrix> {
    (1usize..=8).prop_flat_map(|n| {
        let f = proptest::collection::vec(
            prop_oneof![Just(ExtNat::Fin(2)), Just(ExtNat::Fin(3)), Just(ExtNat::Inf)],
            n,
        );
        let offdiag = proptest::collection::vec(0u8..4, n * n);
        (f, offdiag).prop_map(move |(f, off)| {
            let mut entries = vec![vec![ExtNat::Fin(2); n]; n];
            for i in 0..n {
                entries[i][i] = f[i];
                for j in 0..i {
                    let both2 = f[i] == ExtNat::Fin(2) && f[j] == ExtNat::Fin(2);
                    let m = match off[i * n + j] {
                        0 => ExtNat::Fin(2),
                        1 if both2 => ExtNat::Fin(3),
                        2 if both2 => ExtNat::Fin(4),
                        _ => ExtNat::Inf,
                    };
                    entries[i][j] = m;
                    entries[j][i] = m;
                }
            }
            DyerMatrix { n, entries }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matrix_graph_round_trip(m in arb_matrix()) {
        prop_assert!(m.validate().is_valid());
        let g = matrix_to_graph(&m).unwrap();
        let back = graph_to_matrix(&g);
        prop_assert_eq!(back.entries, m.entries);
        let raw = g.to_raw();
        prop_assert!(raw.validate().is_valid());
        let g2 = raw.compile().unwrap();
        prop_assert_eq!(&g, &g2);
    }
}
