//! End-to-end acceptance gate.
//!
//! Each test prints one `criterion N: PASS` line on success; a failed
//! assertion aborts the test before the line is printed.  All tolerances
//! and budgets are pinned here, not read from the environment.

use dyer::analysis::{check_monotonicity, continuity_experiment, growth_rate, GraphFamily, Slot};
use dyer::model::{
    classify_dyer, induced_coxeter_graph, Kind, RawEdge, RawGraph, RawVertex,
};
use dyer::series::{cyclic_growth, series_coefficients, spherical_coxeter_poly};
use dyer::words::{ball, marking_agreement_radius, normal_form, Budgets, SyllabicWord};
use dyer::{CoxeterGraph, DyerGraph, ExtNat, IntPoly, RationalSeries};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

const RATE_TOL_DEN: u64 = 10_000_000_000; // certified rate width 1e-10

fn tol() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(RATE_TOL_DEN))
}

fn w(s: &str) -> ExtNat {
    if s == "inf" {
        ExtNat::Inf
    } else {
        ExtNat::Fin(s.parse().unwrap())
    }
}

/// Graph on vertices `v1..vn` with the given weights and edges.
fn graph(weights: &[&str], edges: &[(usize, usize, &str)]) -> DyerGraph {
    let vs: Vec<_> = weights
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("v{}", i + 1), w(s)))
        .collect();
    let es: Vec<_> = edges
        .iter()
        .map(|&(a, b, m)| (format!("v{}", a + 1), format!("v{}", b + 1), w(m)))
        .collect();
    DyerGraph::new(vs, es).unwrap()
}

fn coxeter(n: usize, edges: &[(usize, usize, &str)]) -> DyerGraph {
    graph(&vec!["2"; n], edges)
}

/// The (2,3,k) triangle Coxeter graph.
fn triangle(k: &str) -> DyerGraph {
    coxeter(3, &[(0, 2, "3"), (1, 2, k)])
}

/// Every valid Dyer graph with up to 3 vertices, vertex weights in
/// {2,3,4,5,inf} and edge weights in {3,4,5,inf} (non-edge = commutation).
fn sweep_graphs() -> Vec<DyerGraph> {
    const VW: [&str; 5] = ["2", "3", "4", "5", "inf"];
    const EW: [Option<&str>; 5] = [None, Some("3"), Some("4"), Some("5"), Some("inf")];
    let mut out = Vec::new();
    for n in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let mut weights = vec![0usize; n];
        loop {
            let mut edge_choice = vec![0usize; pairs.len()];
            loop {
                let edges: Vec<_> = pairs
                    .iter()
                    .zip(&edge_choice)
                    .filter_map(|(&(a, b), &c)| EW[c].map(|m| (a, b, m)))
                    .collect();
                let vs: Vec<_> = weights
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (format!("v{}", i + 1), w(VW[c])))
                    .collect();
                let es: Vec<_> = edges
                    .iter()
                    .map(|&(a, b, m)| (format!("v{}", a + 1), format!("v{}", b + 1), w(m)))
                    .collect();
                if let Ok(g) = DyerGraph::new(vs, es) {
                    out.push(g);
                }
                if !bump(&mut edge_choice, EW.len()) {
                    break;
                }
            }
            if !bump(&mut weights, VW.len()) {
                break;
            }
        }
    }
    out
}

/// Odometer increment over mixed-radix digits; false on wrap-around.
fn bump(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

#[test]
fn criterion_1_cyclic_baselines() {
    let start = std::time::Instant::now();
    let mut orders: Vec<ExtNat> = (2..=20).map(ExtNat::Fin).collect();
    orders.push(ExtNat::Inf);
    for p in orders {
        let expanded = series_coefficients(&cyclic_growth(p), 12).unwrap();
        let ps = match p {
            ExtNat::Fin(k) => k.to_string(),
            ExtNat::Inf => "inf".to_string(),
        };
        let g = graph(&[&ps], &[]);
        let enumerated = ball(&g, 12, &Budgets::default()).unwrap();
        assert_eq!(expanded.a, enumerated.a, "cyclic order {p}");
        assert_eq!(expanded.b, enumerated.b, "cyclic order {p}");
    }
    assert!(start.elapsed().as_secs() < 1, "criterion 1 exceeded 1 s");
    println!("criterion 1: PASS (cyclic growth formulas match enumeration, p in 2..=20 and inf)");
}

#[test]
fn criterion_2_exhaustive_oracle_sweep() {
    // Closure budget per the 10^6-state cap; the BFS state budget is sized
    // for the largest ball in the sweep (the rank-3 free group, ~1.5e7).
    let budgets = Budgets { states: 20_000_000, closure: 1_000_000 };
    let graphs = sweep_graphs();
    assert!(graphs.len() > 1000, "sweep unexpectedly small: {}", graphs.len());
    for g in &graphs {
        let expanded = series_coefficients(&dyer::series::growth_series(g).unwrap(), 10).unwrap();
        let enumerated = ball(g, 10, &budgets).unwrap();
        assert_eq!(expanded.a, enumerated.a, "recursion vs BFS for {g:?}");
    }
    println!(
        "criterion 2: PASS (recursion matches BFS to degree 10 on all {} valid graphs, n <= 3)",
        graphs.len()
    );
}

#[test]
fn criterion_3_known_closed_forms() {
    let closed: [(&str, DyerGraph, RationalSeries); 3] = [
        (
            "infinite dihedral (1+z)/(1-z)",
            coxeter(2, &[(0, 1, "inf")]),
            RationalSeries::new(IntPoly::from_i64(&[1, 1]), IntPoly::from_i64(&[1, -1])).unwrap(),
        ),
        (
            "free group F2 (1+z)/(1-3z)",
            graph(&["inf", "inf"], &[(0, 1, "inf")]),
            RationalSeries::new(IntPoly::from_i64(&[1, 1]), IntPoly::from_i64(&[1, -3])).unwrap(),
        ),
        (
            "C3 * C3 (1+2z)/(1-2z)",
            graph(&["3", "3"], &[(0, 1, "inf")]),
            RationalSeries::new(IntPoly::from_i64(&[1, 2]), IntPoly::from_i64(&[1, -2])).unwrap(),
        ),
    ];
    for (name, g, expected) in &closed {
        // The independent BFS oracle certifies the closed form first...
        let enumerated = ball(g, 10, &Budgets::default()).unwrap();
        let expanded = series_coefficients(expected, 10).unwrap();
        assert_eq!(enumerated.a, expanded.a, "BFS oracle vs closed form: {name}");
        // ...and only then is the recursion compared against it.
        assert_eq!(&dyer::series::growth_series(g).unwrap(), expected, "{name}");
    }
    println!("criterion 3: PASS (dihedral, F2, and C3 * C3 closed forms, BFS-certified)");
}

#[test]
fn criterion_4_classification_iff_rate_one() {
    let one = BigRational::from(BigInt::from(1));
    let threshold = &one + BigRational::new(BigInt::from(1), BigInt::from(1_000_000));
    let tol = tol();
    for g in sweep_graphs() {
        let kind = classify_dyer(&g).kind;
        let r = growth_rate(&g, &tol).unwrap();
        match kind {
            Kind::Spherical | Kind::Euclidean => {
                assert!(r.is_one, "tau != 1 for {kind:?} graph {g:?}");
                assert_eq!(r.tau_lower, one);
                assert_eq!(r.tau_upper, one);
            }
            Kind::Neither => {
                assert!(!r.is_one);
                assert!(r.tau_lower > threshold, "tau too close to 1 for {g:?}");
            }
        }
    }
    println!("criterion 4: PASS (tau = 1 iff spherical or Euclidean, over the full sweep)");
}

/// Deterministic xorshift generator; keeps the pair corpus reproducible.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// A random valid Dyer graph on up to 5 vertices.
fn random_graph(rng: &mut Rng) -> DyerGraph {
    const VW: [&str; 5] = ["2", "2", "3", "5", "inf"];
    let n = 1 + rng.below(5);
    let weights: Vec<&str> = (0..n).map(|_| VW[rng.below(VW.len())]).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.below(2) == 0 {
                continue;
            }
            let heavy = weights[i] != "2" || weights[j] != "2";
            let m = if heavy {
                "inf"
            } else {
                ["3", "4", "5", "inf"][rng.below(4)]
            };
            edges.push((i, j, m));
        }
    }
    graph(&weights, &edges)
}

/// Weakens `g2` into a comparable `g` on the same simple graph: vertex and
/// edge weights are lowered or kept, so the identity is an order morphism.
fn weaken(rng: &mut Rng, g2: &DyerGraph) -> DyerGraph {
    let lower_v = |rng: &mut Rng, w: ExtNat| -> ExtNat {
        let chain: [ExtNat; 5] = [
            ExtNat::Fin(2),
            ExtNat::Fin(3),
            ExtNat::Fin(4),
            ExtNat::Fin(5),
            ExtNat::Inf,
        ];
        let options: Vec<ExtNat> = chain.iter().copied().filter(|&x| x <= w).collect();
        options[rng.below(options.len())]
    };
    let n = g2.rank();
    let weights: Vec<ExtNat> = (0..n).map(|i| lower_v(rng, g2.vertex_weight(i))).collect();
    let edges: Vec<(String, String, ExtNat)> = g2
        .edges()
        .map(|(u, v, m)| {
            // An edge touching a vertex kept heavy must stay infinite.
            let m = if weights[u] > ExtNat::Fin(2) || weights[v] > ExtNat::Fin(2) {
                ExtNat::Inf
            } else {
                let chain = [ExtNat::Fin(3), ExtNat::Fin(4), ExtNat::Fin(5), ExtNat::Inf];
                let options: Vec<ExtNat> = chain.iter().copied().filter(|&x| x <= m).collect();
                options[rng.below(options.len())]
            };
            (g2.ids()[u].clone(), g2.ids()[v].clone(), m)
        })
        .collect();
    let vs: Vec<_> = (0..n).map(|i| (g2.ids()[i].clone(), weights[i])).collect();
    DyerGraph::new(vs, edges).unwrap()
}

#[test]
fn criterion_5_monotonicity() {
    let mut rng = Rng(0x5eed_1234_dead_beef);
    for case in 0..200 {
        let g2 = random_graph(&mut rng);
        let g = weaken(&mut rng, &g2);
        let identity: Vec<usize> = (0..g.rank()).collect();
        let v = check_monotonicity(&g, &g2, Some(identity), 15).unwrap();
        assert!(v.coefficientwise_ok, "coefficient violation in case {case}: {g:?} vs {g2:?}");
        assert!(v.tau_ok, "rate violation in case {case}");
    }
    // Triangle family: strictly ordered certified rate intervals.
    let tol = tol();
    let rates: Vec<_> = (7..=20)
        .map(|k| growth_rate(&triangle(&k.to_string()), &tol).unwrap())
        .collect();
    for pair in rates.windows(2) {
        assert!(pair[0].tau_upper < pair[1].tau_lower, "triangle rates not strictly ordered");
    }
    println!("criterion 5: PASS (200 comparable pairs coefficientwise, triangle rates strict)");
}

#[test]
fn criterion_6_continuity() {
    let start = std::time::Instant::now();
    let base = RawGraph {
        vertices: (1..=3)
            .map(|i| RawVertex { id: format!("v{i}"), order: ExtNat::Fin(2) })
            .collect(),
        edges: vec![
            RawEdge { u: "v1".into(), v: "v3".into(), m: ExtNat::Fin(3) },
            RawEdge { u: "v2".into(), v: "v3".into(), m: ExtNat::Fin(7) },
        ],
    };
    let fam = GraphFamily::new(
        base,
        vec![Slot::Edge("v2".into(), "v3".into())],
        triangle("inf"),
    )
    .unwrap();
    let report = continuity_experiment(&fam, &[7, 10, 15, 20, 30, 50], &tol()).unwrap();
    // continuity_experiment already certifies tau_k nondecreasing and
    // tau_k <= tau_inf; here the gap must also shrink along the family.
    assert_eq!(report.rows.len(), 6);
    let gap7 = &report.rows[0];
    let gap50 = &report.rows[5];
    assert_eq!((gap7.k, gap50.k), (7, 50));
    assert!(gap50.gap_approx < gap7.gap_approx, "gap did not shrink toward the limit");
    assert!(!report.limit.is_one);
    assert!(start.elapsed().as_secs() < 60, "criterion 6 exceeded 1 min");
    println!("criterion 6: PASS (triangle family rates converge upward to the limit rate)");
}

#[test]
fn criterion_7_marking_distance() {
    let start = std::time::Instant::now();
    let budgets = Budgets { states: 10_000_000, closure: 1_000_000 };
    let t7 = triangle("7");
    assert_eq!(marking_agreement_radius(&t7, &t7, 6, &budgets).unwrap(), 6);
    let c2 = graph(&["2"], &[]);
    let c3 = graph(&["3"], &[]);
    assert_eq!(marking_agreement_radius(&c2, &c3, 6, &budgets).unwrap(), 1);
    // (2,3,7) vs (2,3,8): the shortest distinguishing relation has length 14,
    // so the exhaustive free-word check to radius 10 finds no disagreement.
    let t8 = triangle("8");
    assert_eq!(marking_agreement_radius(&t7, &t8, 10, &budgets).unwrap(), 10);
    assert!(start.elapsed().as_secs() < 120, "criterion 7 exceeded 2 min");
    println!("criterion 7: PASS (agreement radii: identical = R_max, C2 vs C3 = 1, triangles >= 10)");
}

#[test]
fn criterion_8_induced_coxeter_construction() {
    // Four-vertex graph with f = (inf, 2, 2, 5) and edges
    // {v1,v2}: inf, {v2,v3}: 3, {v3,v4}: inf.
    let g = graph(
        &["inf", "2", "2", "5"],
        &[(0, 1, "inf"), (1, 2, "3"), (2, 3, "inf")],
    );
    let (cox, map) = induced_coxeter_graph(&g);
    let lam = cox.as_dyer();
    assert_eq!(lam.rank(), 6);
    assert_eq!(lam.ids(), ["v1", "v2", "v3", "v4", "v1'", "v4'"]);
    let mut edges: Vec<(String, String, ExtNat)> = lam
        .edges()
        .map(|(u, v, m)| (lam.ids()[u].clone(), lam.ids()[v].clone(), m))
        .collect();
    edges.sort();
    let expected = vec![
        // Rule (i): original edges keep their weights; rule (ii): each
        // heavy vertex gains a primed partner joined with weight f(v).
        ("v1".into(), "v1'".into(), ExtNat::Inf),
        ("v1".into(), "v2".into(), ExtNat::Inf),
        ("v2".into(), "v3".into(), ExtNat::Fin(3)),
        ("v3".into(), "v4".into(), ExtNat::Inf),
        ("v4".into(), "v4'".into(), ExtNat::Fin(5)),
    ];
    let mut expected: Vec<(String, String, ExtNat)> = expected;
    expected.sort();
    assert_eq!(edges, expected);
    assert_eq!(map, vec![vec![0, 4], vec![1], vec![2], vec![3, 5]]);

    // One vertex of order 5: the image of the generator inside the order-10
    // dihedral group is v v', of order 5.
    let c5 = graph(&["5"], &[]);
    let (cox, map) = induced_coxeter_graph(&c5);
    let lam = cox.as_dyer();
    assert_eq!(map, vec![vec![0, 1]]);
    let total = ball(lam, 10, &Budgets::default()).unwrap();
    assert_eq!(total.b.last().unwrap(), &BigUint::from(10u32));
    let vv: SyllabicWord = {
        use dyer::Syllable;
        SyllabicWord(vec![Syllable { gen: 0, exp: 1 }, Syllable { gen: 1, exp: 1 }])
    };
    let mut power = SyllabicWord::default();
    let mut images = std::collections::HashSet::new();
    for _ in 0..10 {
        power = power.concat(&vv);
        let nf = normal_form(lam, &power, 1_000_000).unwrap();
        power = nf.word.clone();
        images.insert(nf.word);
    }
    assert_eq!(images.len(), 5);
    println!("criterion 8: PASS (induced Coxeter graph edges and the order-5 image subgroup)");
}

#[test]
fn criterion_9_spherical_tables_vs_enumeration() {
    let mut cases: Vec<(String, DyerGraph)> = Vec::new();
    for n in 1..=7 {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, "3")).collect();
        cases.push((format!("A{n}"), coxeter(n, &edges)));
    }
    for n in 2..=5 {
        let mut edges: Vec<(usize, usize, &str)> = (0..n - 2).map(|i| (i, i + 1, "3")).collect();
        edges.push((n - 2, n - 1, "4"));
        cases.push((format!("B{n}"), coxeter(n, &edges)));
    }
    for n in 4..=6 {
        // Path on 0..=n-3 with the fork (n-3)-(n-2), (n-3)-(n-1) at the end.
        let mut edges: Vec<(usize, usize, &str)> = (0..n - 3).map(|i| (i, i + 1, "3")).collect();
        edges.push((n - 3, n - 2, "3"));
        edges.push((n - 3, n - 1, "3"));
        cases.push((format!("D{n}"), coxeter(n, &edges)));
    }
    cases.push(("F4".into(), coxeter(4, &[(0, 1, "3"), (1, 2, "4"), (2, 3, "3")])));
    cases.push(("H3".into(), coxeter(3, &[(0, 1, "5"), (1, 2, "3")])));
    cases.push(("H4".into(), coxeter(4, &[(0, 1, "5"), (1, 2, "3"), (2, 3, "3")])));
    for m in 3..=50u64 {
        cases.push((format!("I2({m})"), coxeter(2, &[(0, 1, &m.to_string())])));
    }
    let budgets = Budgets { states: 1_000_000, closure: 1_000_000 };
    for (name, g) in &cases {
        let cox = CoxeterGraph::try_from_dyer(g.clone()).unwrap();
        let poly = spherical_coxeter_poly(&cox).unwrap();
        let degree = poly.degree().unwrap();
        let enumerated = ball(g, degree, &budgets).unwrap();
        let table: Vec<BigInt> = enumerated.a.iter().map(|x| BigInt::from(x.clone())).collect();
        assert_eq!(poly.coeffs(), &table[..], "table vs enumeration for {name}");
    }
    println!(
        "criterion 9: PASS (exponent tables match enumeration for {} spherical instances)",
        cases.len()
    );
}
