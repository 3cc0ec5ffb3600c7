//! Dyer graphs, Dyer matrices, and structural operations on them.
//!
//! A marked Dyer graph carries an ordered vertex set, a vertex weight
//! `f(v) >= 2` (the generator order), and an edge weight `m(e) >= 3` on a
//! simple graph, subject to the Dyer condition: every edge touching a vertex
//! of weight `>= 3` has weight infinity.

mod classify;

pub use classify::{
    classify_coxeter, classify_dyer, ComponentVerdict, IrreducibleType, Kind,
    SphericalEuclideanVerdict,
};

use crate::{Error, Result};
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// An integer `>= 2` or infinity.  Carries every vertex and edge weight.
///
/// `Inf` compares strictly greater than every finite value.  In all file
/// formats infinity is spelled `"inf"`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    /// A finite value; panics below 2 (weights below 2 never arise).
    pub fn fin(n: u64) -> Self {
        assert!(n >= 2, "ExtNat must be >= 2, got {n}");
        ExtNat::Fin(n)
    }

    pub fn is_inf(self) -> bool {
        matches!(self, ExtNat::Inf)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(w, "{n}"),
            ExtNat::Inf => write!(w, "inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(n) => s.serialize_u64(*n),
            ExtNat::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) if n >= 2 => Ok(ExtNat::Fin(n)),
            Raw::Num(n) => Err(serde::de::Error::custom(format!("weight {n} is below 2"))),
            Raw::Str(s) if s == "inf" => Ok(ExtNat::Inf),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("expected integer or \"inf\", got {s:?}"))),
        }
    }
}

/// The raw on-disk shape of a Dyer graph, prior to validation.
///
/// `{"vertices":[{"id":"v1","order":"inf"}],"edges":[{"u":"v1","v":"v2","m":3}]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertices: Vec<RawVertex>,
    #[serde(default)]
    pub edges: Vec<RawEdge>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawVertex {
    pub id: String,
    pub order: ExtNat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawEdge {
    pub u: String,
    pub v: String,
    pub m: ExtNat,
}

/// Outcome of validating a raw graph; empty iff the graph is a valid Dyer graph.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl RawGraph {
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let mut index = HashMap::new();
        for (i, vx) in self.vertices.iter().enumerate() {
            if index.insert(vx.id.clone(), i).is_some() {
                v.push(format!("duplicate vertex id {:?}", vx.id));
            }
        }
        let mut seen_edges = BTreeMap::new();
        for e in &self.edges {
            let (ui, vi) = match (index.get(&e.u), index.get(&e.v)) {
                (Some(&a), Some(&b)) => (a, b),
                _ => {
                    v.push(format!("edge {{{},{}}} references an unknown vertex", e.u, e.v));
                    continue;
                }
            };
            if ui == vi {
                v.push(format!("loop at vertex {:?}", e.u));
                continue;
            }
            let key = (ui.min(vi), ui.max(vi));
            if seen_edges.insert(key, e.m).is_some() {
                v.push(format!("multiple edges between {:?} and {:?}", e.u, e.v));
            }
            if let ExtNat::Fin(m) = e.m {
                if m < 3 {
                    v.push(format!("edge {{{},{}}} has weight {m} < 3", e.u, e.v));
                }
            }
            let fu = self.vertices[ui].order;
            let fv = self.vertices[vi].order;
            if (fu >= ExtNat::Fin(3) || fv >= ExtNat::Fin(3)) && !e.m.is_inf() {
                v.push(format!(
                    "edge {{{},{}}} touches a vertex of weight >= 3 but has finite weight {}",
                    e.u, e.v, e.m
                ));
            }
        }
        ValidationReport { violations: v }
    }

    pub fn compile(&self) -> Result<DyerGraph> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::InvalidGraph(report.violations.join("; ")));
        }
        let ids: Vec<String> = self.vertices.iter().map(|v| v.id.clone()).collect();
        let f: Vec<ExtNat> = self.vertices.iter().map(|v| v.order).collect();
        let index: HashMap<&str, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut edges = BTreeMap::new();
        for e in &self.edges {
            let ui = index[e.u.as_str()];
            let vi = index[e.v.as_str()];
            edges.insert((ui.min(vi), ui.max(vi)), e.m);
        }
        Ok(DyerGraph { ids, f, edges })
    }
}

/// A validated marked Dyer graph.  The vertex order is part of the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyerGraph {
    ids: Vec<String>,
    f: Vec<ExtNat>,
    edges: BTreeMap<(usize, usize), ExtNat>,
}

impl DyerGraph {
    /// Build from ordered `(id, weight)` vertices and `(id, id, weight)` edges.
    pub fn new<I, E>(vertices: I, edges: E) -> Result<DyerGraph>
    where
        I: IntoIterator<Item = (String, ExtNat)>,
        E: IntoIterator<Item = (String, String, ExtNat)>,
    {
        let raw = RawGraph {
            vertices: vertices
                .into_iter()
                .map(|(id, order)| RawVertex { id, order })
                .collect(),
            edges: edges
                .into_iter()
                .map(|(u, v, m)| RawEdge { u, v, m })
                .collect(),
        };
        raw.compile()
    }

    pub fn rank(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn vertex_weight(&self, i: usize) -> ExtNat {
        self.f[i]
    }

    /// Edge weight between distinct vertices; 2 for a non-edge (commutation).
    pub fn pair_weight(&self, i: usize, j: usize) -> ExtNat {
        debug_assert_ne!(i, j);
        self.edges
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(ExtNat::Fin(2))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, ExtNat)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self
                .ids
                .iter()
                .zip(&self.f)
                .map(|(id, &order)| RawVertex { id: id.clone(), order })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(&(u, v), &m)| RawEdge {
                    u: self.ids[u].clone(),
                    v: self.ids[v].clone(),
                    m,
                })
                .collect(),
        }
    }

    /// Full subgraph induced by a vertex subset (given as indices, kept in
    /// marking order).
    pub fn induced_subgraph(&self, subset: &[usize]) -> DyerGraph {
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        let pos: HashMap<usize, usize> =
            subset.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let ids = subset.iter().map(|&v| self.ids[v].clone()).collect();
        let f = subset.iter().map(|&v| self.f[v]).collect();
        let mut edges = BTreeMap::new();
        for (&(u, v), &m) in &self.edges {
            if let (Some(&a), Some(&b)) = (pos.get(&u), pos.get(&v)) {
                edges.insert((a.min(b), a.max(b)), m);
            }
        }
        DyerGraph { ids, f, edges }
    }

    /// Disjoint union; ids of the second graph are suffixed when they collide.
    pub fn disjoint_union(&self, other: &DyerGraph) -> DyerGraph {
        let mut ids = self.ids.clone();
        for id in &other.ids {
            let mut cand = id.clone();
            while ids.contains(&cand) {
                cand.push('\'');
            }
            ids.push(cand);
        }
        let mut f = self.f.clone();
        f.extend_from_slice(&other.f);
        let mut edges = self.edges.clone();
        let off = self.rank();
        for (&(u, v), &m) in &other.edges {
            edges.insert((u + off, v + off), m);
        }
        DyerGraph { ids, f, edges }
    }
}

/// A marked Coxeter graph: a Dyer graph with all vertex weights equal to 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterGraph(DyerGraph);

impl CoxeterGraph {
    pub fn try_from_dyer(g: DyerGraph) -> Result<CoxeterGraph> {
        if let Some(i) = (0..g.rank()).find(|&i| g.f[i] != ExtNat::Fin(2)) {
            return Err(Error::Domain(format!(
                "vertex {:?} has weight {}, not a Coxeter graph",
                g.ids[i], g.f[i]
            )));
        }
        Ok(CoxeterGraph(g))
    }

    /// Build a Coxeter graph from vertex ids and weighted edges.
    pub fn new<I, E>(vertices: I, edges: E) -> Result<CoxeterGraph>
    where
        I: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String, ExtNat)>,
    {
        CoxeterGraph::try_from_dyer(DyerGraph::new(
            vertices.into_iter().map(|id| (id, ExtNat::fin(2))),
            edges,
        )?)
    }

    pub fn as_dyer(&self) -> &DyerGraph {
        &self.0
    }

    pub fn into_dyer(self) -> DyerGraph {
        self.0
    }
}

/// A symmetric matrix of weights equivalent to a Dyer graph.
/// Off-diagonal entry 2 encodes a non-edge.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DyerMatrix {
    pub n: usize,
    pub entries: Vec<Vec<ExtNat>>,
}

impl DyerMatrix {
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            v.push(format!("entries are not an {0}x{0} array", self.n));
            return ValidationReport { violations: v };
        }
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.entries[i][j] != self.entries[j][i] {
                    v.push(format!("entries ({i},{j}) and ({j},{i}) differ"));
                }
            }
        }
        for i in 0..self.n {
            if self.entries[i][i] >= ExtNat::Fin(3) {
                for j in 0..self.n {
                    if j != i {
                        let m = self.entries[i][j];
                        if m != ExtNat::Fin(2) && !m.is_inf() {
                            v.push(format!(
                                "diagonal entry ({i},{i}) >= 3 forces entry ({i},{j}) into {{2, inf}}, got {m}"
                            ));
                        }
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }
}

/// The graph half of the bijection between Dyer matrices and marked Dyer
/// systems: `f(v_i) = m_ii`, an edge of weight `m_ij` exactly when `m_ij >= 3`.
pub fn matrix_to_graph(m: &DyerMatrix) -> Result<DyerGraph> {
    let report = m.validate();
    if !report.is_valid() {
        return Err(Error::InvalidMatrix(report.violations.join("; ")));
    }
    let ids: Vec<String> = (1..=m.n).map(|i| format!("v{i}")).collect();
    let f: Vec<ExtNat> = (0..m.n).map(|i| m.entries[i][i]).collect();
    let mut edges = BTreeMap::new();
    for i in 0..m.n {
        for j in (i + 1)..m.n {
            let w = m.entries[i][j];
            if w >= ExtNat::Fin(3) {
                edges.insert((i, j), w);
            }
        }
    }
    Ok(DyerGraph { ids, f, edges })
}

/// Inverse of [`matrix_to_graph`]; non-edges become off-diagonal entries 2.
pub fn graph_to_matrix(g: &DyerGraph) -> DyerMatrix {
    let n = g.rank();
    let mut entries = vec![vec![ExtNat::Fin(2); n]; n];
    for i in 0..n {
        entries[i][i] = g.f[i];
    }
    for (u, v, m) in g.edges() {
        entries[u][v] = m;
        entries[v][u] = m;
    }
    DyerMatrix { n, entries }
}

/// Partition of the generators by order: `(V_2, V_p, V_inf)`.
pub fn partition_generators(g: &DyerGraph) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut v2 = Vec::new();
    let mut vp = Vec::new();
    let mut vinf = Vec::new();
    for i in 0..g.rank() {
        match g.f[i] {
            ExtNat::Fin(2) => v2.push(i),
            ExtNat::Fin(_) => vp.push(i),
            ExtNat::Inf => vinf.push(i),
        }
    }
    (v2, vp, vinf)
}

/// The Coxeter graph realizing the Dyer group as a finite-index subgroup:
/// every vertex of weight `>= 3` gains a primed partner joined by an edge of
/// weight `f(v)`; original edges keep their weights.  The map sends a weight-2
/// generator `v` to the single-letter word `(v)` and every other generator to
/// `(v, v')`, as generator index lists into the induced graph's marking.
pub fn induced_coxeter_graph(g: &DyerGraph) -> (CoxeterGraph, Vec<Vec<usize>>) {
    let n = g.rank();
    let mut ids = g.ids.clone();
    let mut edges: BTreeMap<(usize, usize), ExtNat> = g.edges.clone();
    let mut map = Vec::with_capacity(n);
    let mut next = n;
    for i in 0..n {
        if g.f[i] == ExtNat::Fin(2) {
            map.push(vec![i]);
        } else {
            ids.push(format!("{}'", g.ids[i]));
            edges.insert((i, next), g.f[i]);
            map.push(vec![i, next]);
            next += 1;
        }
    }
    let f = vec![ExtNat::Fin(2); ids.len()];
    (CoxeterGraph(DyerGraph { ids, f, edges }), map)
}

/// Searches for an injective vertex map witnessing `g <= g2` in the
/// weight-monotone order: edges map to edges, `f(v) <= f'(phi(v))`, and
/// `m(e) <= m'(phi(e))`.  Exhaustive backtracking over injections.
pub fn find_order_morphism(g: &DyerGraph, g2: &DyerGraph) -> Option<Vec<usize>> {
    let n = g.rank();
    let n2 = g2.rank();
    if n > n2 {
        return None;
    }
    let mut deg = vec![0usize; n];
    for (u, v, _) in g.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut deg2 = vec![0usize; n2];
    for (u, v, _) in g2.edges() {
        deg2[u] += 1;
        deg2[v] += 1;
    }
    // Assign high-degree vertices first; they are the most constrained.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));

    fn extend(
        k: usize,
        order: &[usize],
        g: &DyerGraph,
        g2: &DyerGraph,
        deg: &[usize],
        deg2: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for t in 0..g2.rank() {
            if used[t] || g.vertex_weight(v) > g2.vertex_weight(t) || deg[v] > deg2[t] {
                continue;
            }
            let ok = order[..k].iter().all(|&w| {
                let tw = map[w].unwrap();
                let mvw = g.pair_weight(v, w);
                if mvw == ExtNat::Fin(2) {
                    true // non-edges are unconstrained under a graph morphism
                } else {
                    let m2 = g2.pair_weight(t, tw);
                    m2 >= ExtNat::Fin(3) && mvw <= m2
                }
            });
            if !ok {
                continue;
            }
            map[v] = Some(t);
            used[t] = true;
            if extend(k + 1, order, g, g2, deg, deg2, map, used) {
                return true;
            }
            map[v] = None;
            used[t] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n2];
    if extend(0, &order, g, g2, &deg, &deg2, &mut map, &mut used) {
        Some(map.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests;
