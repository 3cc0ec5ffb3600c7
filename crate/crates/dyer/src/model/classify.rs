//! Template matching against the irreducible spherical and Euclidean
//! (affine) Coxeter types, and the derived classification of Dyer graphs.

use super::{CoxeterGraph, DyerGraph, ExtNat};
use serde::Serialize;

/// Irreducible Coxeter types recognized by the classifier.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral type with finite edge weight `m >= 3` (`I2(3) = A2`, `I2(4) = B2`).
    I2(u64),
    /// Affine type with `n + 1` vertices; `AffineA(1)` is the single
    /// infinite edge (the infinite dihedral group).
    AffineA(usize),
    AffineB(usize),
    AffineC(usize),
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    AffineF4,
    AffineG2,
}

impl IrreducibleType {
    pub fn is_spherical(self) -> bool {
        use IrreducibleType::*;
        matches!(self, A(_) | B(_) | D(_) | E6 | E7 | E8 | F4 | H3 | H4 | I2(_))
    }

    /// Exponents of the spherical types; `None` for affine types.
    /// The growth polynomial is the product of `1 + z + ... + z^e` over them.
    pub fn exponents(self) -> Option<Vec<u64>> {
        use IrreducibleType::*;
        Some(match self {
            A(n) => (1..=n as u64).collect(),
            B(n) => (1..=n as u64).map(|k| 2 * k - 1).collect(),
            D(n) => {
                let mut e: Vec<u64> = (1..n as u64).map(|k| 2 * k - 1).collect();
                e.push(n as u64 - 1);
                e.sort_unstable();
                e
            }
            E6 => vec![1, 4, 5, 7, 8, 11],
            E7 => vec![1, 5, 7, 9, 11, 13, 17],
            E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            F4 => vec![1, 5, 7, 11],
            H3 => vec![1, 5, 9],
            H4 => vec![1, 11, 19, 29],
            I2(m) => vec![1, m - 1],
            _ => return None,
        })
    }

    pub fn label(self) -> String {
        use IrreducibleType::*;
        match self {
            A(n) => format!("A{n}"),
            B(n) => format!("B{n}"),
            D(n) => format!("D{n}"),
            E6 => "E6".into(),
            E7 => "E7".into(),
            E8 => "E8".into(),
            F4 => "F4".into(),
            H3 => "H3".into(),
            H4 => "H4".into(),
            I2(m) => format!("I2({m})"),
            AffineA(n) => format!("~A{n}"),
            AffineB(n) => format!("~B{n}"),
            AffineC(n) => format!("~C{n}"),
            AffineD(n) => format!("~D{n}"),
            AffineE6 => "~E6".into(),
            AffineE7 => "~E7".into(),
            AffineE8 => "~E8".into(),
            AffineF4 => "~F4".into(),
            AffineG2 => "~G2".into(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Kind {
    Spherical,
    Euclidean,
    Neither,
}

/// Per-component classification outcome.
#[derive(Clone, Debug)]
pub struct ComponentVerdict {
    /// Vertex indices of the component, in marking order.
    pub vertices: Vec<usize>,
    /// Matched irreducible type, or `None` when the component is neither
    /// spherical nor Euclidean.
    pub ty: Option<IrreducibleType>,
    /// Human-readable label: the type, a cyclic factor `C..` for isolated
    /// weight `>= 3` vertices of a Dyer graph, or `"nonclassified"`.
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct SphericalEuclideanVerdict {
    pub kind: Kind,
    pub components: Vec<ComponentVerdict>,
}

fn connected_components(g: &DyerGraph) -> Vec<Vec<usize>> {
    let n = g.rank();
    let mut adj = vec![Vec::new(); n];
    for (u, v, _) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp[start] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Matches one connected weighted component (all vertex weights 2) against
/// the irreducible templates.  `verts` are indices into `g`.
fn match_component(g: &DyerGraph, verts: &[usize]) -> Option<IrreducibleType> {
    use IrreducibleType::*;
    let n = verts.len();
    let pos = |v: usize| verts.iter().position(|&x| x == v).unwrap();
    let mut adj: Vec<Vec<(usize, ExtNat)>> = vec![Vec::new(); n];
    let mut edge_count = 0usize;
    for (u, v, m) in g.edges() {
        if verts.contains(&u) && verts.contains(&v) {
            adj[pos(u)].push((pos(v), m));
            adj[pos(v)].push((pos(u), m));
            edge_count += 1;
        }
    }
    let deg = |i: usize| adj[i].len();
    let all_weight_3 = (0..n).all(|i| adj[i].iter().all(|&(_, m)| m == ExtNat::Fin(3)));

    if n == 1 {
        return Some(A(1));
    }
    if n == 2 {
        let m = adj[0][0].1;
        return match m {
            ExtNat::Fin(3) => Some(A(2)),
            ExtNat::Fin(4) => Some(B(2)),
            ExtNat::Fin(m) => Some(I2(m)),
            ExtNat::Inf => Some(AffineA(1)),
        };
    }
    if edge_count == n {
        // Unicyclic; only the all-3 full cycle is affine A.
        if (0..n).all(|i| deg(i) == 2) && all_weight_3 {
            return Some(AffineA(n - 1));
        }
        return None;
    }
    if edge_count != n - 1 {
        return None; // more than one independent cycle
    }

    // Tree cases below.
    if adj.iter().any(|a| a.len() >= 4) {
        // Only the 4-star with weight-3 edges is a template (affine D4).
        if n == 5 && all_weight_3 {
            let centers = (0..n).filter(|&i| deg(i) == 4).count();
            if centers == 1 && (0..n).all(|i| deg(i) == 4 || deg(i) == 1) {
                return Some(AffineD(4));
            }
        }
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&i| deg(i) == 3).collect();
    match branches.len() {
        0 => {
            // Path: read the weight sequence and canonicalize by reversal.
            let start = (0..n).find(|&i| deg(i) == 1).unwrap();
            let mut seq = Vec::with_capacity(n - 1);
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let Some(&(next, m)) = adj[cur].iter().find(|&&(w, _)| w != prev) else {
                    break;
                };
                seq.push(m);
                prev = cur;
                cur = next;
            }
            let mut rev = seq.clone();
            rev.reverse();
            let ws = seq.min(rev);
            classify_path(&ws)
        }
        1 => {
            let b = branches[0];
            // Three legs from the branch vertex: (edge count, weights outward).
            let mut legs: Vec<Vec<ExtNat>> = Vec::new();
            for &(first, m0) in &adj[b] {
                let mut weights = vec![m0];
                let mut prev = b;
                let mut cur = first;
                while let Some(&(next, m)) = adj[cur].iter().find(|&&(w, _)| w != prev) {
                    weights.push(m);
                    prev = cur;
                    cur = next;
                }
                legs.push(weights);
            }
            legs.sort_by_key(|l| l.len());
            let lens: Vec<usize> = legs.iter().map(|l| l.len()).collect();
            if all_weight_3 {
                return match (lens[0], lens[1], lens[2]) {
                    (1, 1, _) => Some(D(n)),
                    (1, 2, 2) => Some(E6),
                    (1, 2, 3) => Some(E7),
                    (1, 2, 4) => Some(E8),
                    (2, 2, 2) => Some(AffineE6),
                    (1, 3, 3) => Some(AffineE7),
                    (1, 2, 5) => Some(AffineE8),
                    _ => None,
                };
            }
            // Affine B: fork legs (1,1,c) with a single weight-4 edge at the
            // far end of the long leg (any leg when all have length 1).
            if lens[0] == 1 && lens[1] == 1 {
                let mut fours = 0usize;
                let mut ok = true;
                for leg in &legs {
                    for (k, &m) in leg.iter().enumerate() {
                        if m == ExtNat::Fin(3) {
                            continue;
                        }
                        if m == ExtNat::Fin(4) && k + 1 == leg.len() {
                            fours += 1;
                        } else {
                            ok = false;
                        }
                    }
                }
                // With legs (1,1,c) and c > 1, the weight-4 edge must be the
                // terminal edge of the long leg; for c = 1 the legs are
                // interchangeable.
                if ok && fours == 1 && (lens[2] == 1 || legs[2].last() == Some(&ExtNat::Fin(4))) {
                    return Some(AffineB(n - 1));
                }
            }
            None
        }
        2 => {
            // Affine D: forks at both ends of an all-weight-3 path.
            if !all_weight_3 {
                return None;
            }
            let leaves: Vec<usize> = (0..n).filter(|&i| deg(i) == 1).collect();
            if leaves.len() != 4 {
                return None;
            }
            for &b in &branches {
                let leaf_nbrs = adj[b].iter().filter(|&&(w, _)| deg(w) == 1).count();
                if leaf_nbrs != 2 {
                    return None;
                }
            }
            Some(AffineD(n - 1))
        }
        _ => None,
    }
}

/// Path templates, weight sequence canonicalized to the lexicographically
/// smaller direction, length >= 2 edges.
fn classify_path(ws: &[ExtNat]) -> Option<IrreducibleType> {
    use IrreducibleType::*;
    let n = ws.len() + 1;
    let fin = |m: u64| ExtNat::Fin(m);
    let non3: Vec<(usize, ExtNat)> = ws
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, m)| m != fin(3))
        .collect();
    match non3.len() {
        0 => Some(A(n)),
        1 => {
            let (i, m) = non3[0];
            let at_end = i == 0 || i == ws.len() - 1;
            match m {
                ExtNat::Fin(4) if at_end => Some(B(n)),
                ExtNat::Fin(4) if n == 4 => Some(F4),
                ExtNat::Fin(4) if n == 5 && (i == 1 || i == 2) => Some(AffineF4),
                ExtNat::Fin(5) if at_end && n == 3 => Some(H3),
                ExtNat::Fin(5) if at_end && n == 4 => Some(H4),
                ExtNat::Fin(6) if at_end && n == 3 => Some(AffineG2),
                _ => None,
            }
        }
        2 => {
            let ((i, mi), (j, mj)) = (non3[0], non3[1]);
            if mi == fin(4) && mj == fin(4) && i == 0 && j == ws.len() - 1 {
                Some(AffineC(n - 1))
            } else {
                None
            }
        }
        _ => None,
    }
}

fn verdict_from_components(components: Vec<ComponentVerdict>) -> SphericalEuclideanVerdict {
    let all_classified = components.iter().all(|c| c.ty.is_some());
    let any_affine = components
        .iter()
        .any(|c| c.ty.is_some_and(|t| !t.is_spherical()));
    let kind = if !all_classified {
        Kind::Neither
    } else if any_affine {
        Kind::Euclidean
    } else {
        Kind::Spherical
    };
    SphericalEuclideanVerdict { kind, components }
}

/// Decomposes into connected components and matches each against the
/// irreducible spherical and affine templates.
pub fn classify_coxeter(g: &CoxeterGraph) -> SphericalEuclideanVerdict {
    let g = g.as_dyer();
    let components = connected_components(g)
        .into_iter()
        .map(|verts| {
            let ty = match_component(g, &verts);
            let label = ty.map_or_else(|| "nonclassified".to_string(), IrreducibleType::label);
            ComponentVerdict { vertices: verts, ty, label }
        })
        .collect();
    verdict_from_components(components)
}

/// A Dyer graph is spherical (resp. Euclidean) when every weight `>= 3`
/// vertex is isolated in the whole graph and the weight-2 Coxeter part is
/// spherical (resp. Euclidean); the group is then the direct product of the
/// Coxeter part with cyclic factors.  The empty graph is spherical.
pub fn classify_dyer(g: &DyerGraph) -> SphericalEuclideanVerdict {
    let (v2, vp, vinf) = super::partition_generators(g);
    let heavy: Vec<usize> = vp.iter().chain(&vinf).copied().collect();
    let heavy_isolated = g
        .edges()
        .all(|(u, v, _)| !heavy.contains(&u) && !heavy.contains(&v));

    let cox = CoxeterGraph(g.induced_subgraph(&v2));
    let mut verdict = classify_coxeter(&cox);
    // Component indices refer to g's marking, not the subgraph's.
    for c in &mut verdict.components {
        for v in &mut c.vertices {
            *v = v2[*v];
        }
    }
    for &v in &heavy {
        verdict.components.push(ComponentVerdict {
            vertices: vec![v],
            ty: None,
            label: format!("C{}", g.vertex_weight(v)),
        });
    }
    if !heavy_isolated {
        verdict.kind = Kind::Neither;
    }
    verdict
}
