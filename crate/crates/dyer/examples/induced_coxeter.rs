//! Soergel's induced Coxeter graph: every Dyer group embeds with finite
//! index into the Coxeter group of the induced graph.

use dyer::model::induced_coxeter_graph;
use dyer::{DyerGraph, ExtNat};

fn main() {
    // f = (inf, 2, 2, 5) with edges {v1,v2}: inf, {v2,v3}: 3, {v3,v4}: inf.
    let g = DyerGraph::new(
        [
            ("v1".into(), ExtNat::Inf),
            ("v2".into(), ExtNat::Fin(2)),
            ("v3".into(), ExtNat::Fin(2)),
            ("v4".into(), ExtNat::Fin(5)),
        ],
        [
            ("v1".into(), "v2".into(), ExtNat::Inf),
            ("v2".into(), "v3".into(), ExtNat::Fin(3)),
            ("v3".into(), "v4".into(), ExtNat::Inf),
        ],
    )
    .unwrap();
    let (cox, map) = induced_coxeter_graph(&g);
    let lam = cox.as_dyer();
    println!("induced Coxeter graph on {:?}:", lam.ids());
    for (u, v, m) in lam.edges() {
        println!("  {{{}, {}}}: {m}", lam.ids()[u], lam.ids()[v]);
    }
    println!("generator images (index 2 * #primed vertices):");
    for (i, img) in map.iter().enumerate() {
        let rendered: Vec<&str> = img.iter().map(|&j| lam.ids()[j].as_str()).collect();
        println!("  {} -> {}", g.ids()[i], rendered.join(" "));
    }
}
