//! Graph builders shared by unit tests.

use crate::model::{DyerGraph, ExtNat};

pub(crate) fn w(s: &str) -> ExtNat {
    if s == "inf" {
        ExtNat::Inf
    } else {
        ExtNat::Fin(s.parse().unwrap())
    }
}

/// Graph with vertices `v1..vn` of the given weights and 0-indexed edges.
pub(crate) fn graph(vertices: &[&str], edges: &[(usize, usize, &str)]) -> DyerGraph {
    let vs: Vec<_> = vertices
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

pub(crate) fn coxeter(n: usize, edges: &[(usize, usize, &str)]) -> DyerGraph {
    graph(&vec!["2"; n], edges)
}
