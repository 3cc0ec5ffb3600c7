//! The word problem: ShortLex normal forms under the syllabic rewriting
//! system, and word lengths.

use dyer::words::{compress, normal_form};
use dyer::{DyerGraph, ExtNat};

fn main() {
    // The A3 Coxeter system, whose group is the symmetric group S4.
    let g = DyerGraph::new(
        [
            ("s1".into(), ExtNat::Fin(2)),
            ("s2".into(), ExtNat::Fin(2)),
            ("s3".into(), ExtNat::Fin(2)),
        ],
        [
            ("s1".into(), "s2".into(), ExtNat::Fin(3)),
            ("s2".into(), "s3".into(), ExtNat::Fin(3)),
        ],
    )
    .unwrap();
    // Letters are (generator index, exponent).
    let words: Vec<(&str, Vec<(usize, i64)>)> = vec![
        ("s2 s1 s2", vec![(1, 1), (0, 1), (1, 1)]),
        ("s3 s1", vec![(2, 1), (0, 1)]),
        ("s1 s2 s1 s2 s1 s2", vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)]),
    ];
    println!("symmetric group S4 as the A3 Coxeter system:");
    for (text, letters) in words {
        let w = compress(&g, &letters).unwrap();
        let nf = normal_form(&g, &w, 1_000_000).unwrap();
        let rendered: Vec<String> = nf
            .word
            .0
            .iter()
            .map(|s| {
                if s.exp == 1 {
                    format!("s{}", s.gen + 1)
                } else {
                    format!("s{}^{}", s.gen + 1, s.exp)
                }
            })
            .collect();
        println!(
            "  {text}  ->  {}  (length {})",
            if rendered.is_empty() { "e".into() } else { rendered.join(" ") },
            nf.word_length
        );
    }
}
