//! Weight-monotone one-parameter families of Dyer graphs.
//!
//! A family fixes one simple graph and grows a chosen set of vertex or edge
//! weights with the parameter; the declared limit graph carries `inf` in the
//! growing slots.  Such families are exactly the convergent sequences whose
//! limits the continuity theorem describes.

use crate::model::{DyerGraph, ExtNat, RawGraph};
use crate::{Error, Result};
use serde::Deserialize;

/// A growing weight slot: one vertex order or one edge weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Slot {
    Vertex(String),
    Edge(String, String),
}

impl Slot {
    /// Parses `vertex:v4` or `edge:v2-v3`.
    fn parse(s: &str) -> Result<Slot> {
        if let Some(id) = s.strip_prefix("vertex:") {
            return Ok(Slot::Vertex(id.to_string()));
        }
        if let Some(pair) = s.strip_prefix("edge:") {
            if let Some((u, v)) = pair.split_once('-') {
                return Ok(Slot::Edge(u.to_string(), v.to_string()));
            }
        }
        Err(Error::Domain(format!(
            "malformed slot {s:?}; expected vertex:ID or edge:ID-ID"
        )))
    }
}

#[derive(Deserialize)]
struct RawSlot {
    slot: String,
}

#[derive(Deserialize)]
struct RawFamily {
    base: RawGraph,
    growing: Vec<RawSlot>,
    limit: RawGraph,
}

/// A validated family: `instantiate(k)` substitutes `k` into every growing
/// slot of the base graph; the limit graph is the `inf` substitution.
#[derive(Clone, Debug)]
pub struct GraphFamily {
    base: RawGraph,
    slots: Vec<Slot>,
    limit: DyerGraph,
}

impl GraphFamily {
    pub fn from_json(text: &str) -> Result<GraphFamily> {
        let raw: RawFamily =
            serde_json::from_str(text).map_err(|e| Error::Domain(format!("bad family JSON: {e}")))?;
        let slots = raw
            .growing
            .iter()
            .map(|s| Slot::parse(&s.slot))
            .collect::<Result<Vec<_>>>()?;
        GraphFamily::new(raw.base, slots, raw.limit.compile()?)
    }

    pub fn new(base: RawGraph, slots: Vec<Slot>, limit: DyerGraph) -> Result<GraphFamily> {
        if slots.is_empty() {
            return Err(Error::Domain("family with no growing slots".into()));
        }
        let family = GraphFamily { base, slots, limit };
        // The declared limit must be the inf substitution on the same graph.
        let expected = family.substitute(ExtNat::Inf)?;
        if expected != family.limit {
            return Err(Error::Domain(
                "limit graph is not the base graph with inf in the growing slots".into(),
            ));
        }
        Ok(family)
    }

    pub fn limit(&self) -> &DyerGraph {
        &self.limit
    }

    fn substitute(&self, w: ExtNat) -> Result<DyerGraph> {
        let mut raw = self.base.clone();
        for slot in &self.slots {
            match slot {
                Slot::Vertex(id) => {
                    let v = raw
                        .vertices
                        .iter_mut()
                        .find(|v| &v.id == id)
                        .ok_or_else(|| Error::Domain(format!("no vertex {id} in the base graph")))?;
                    v.order = w;
                }
                Slot::Edge(u, v) => {
                    let e = raw
                        .edges
                        .iter_mut()
                        .find(|e| (&e.u == u && &e.v == v) || (&e.u == v && &e.v == u))
                        .ok_or_else(|| {
                            Error::Domain(format!("no edge {{{u},{v}}} in the base graph"))
                        })?;
                    e.m = w;
                }
            }
        }
        raw.compile()
    }

    /// The family member at parameter `k`.  Vertex slots need `k >= 2`,
    /// edge slots `k >= 3`; weights are nondecreasing in `k` by construction.
    pub fn instantiate(&self, k: u64) -> Result<DyerGraph> {
        let min = if self.slots.iter().any(|s| matches!(s, Slot::Edge(..))) {
            3
        } else {
            2
        };
        if k < min {
            return Err(Error::Domain(format!(
                "parameter {k} below the minimal slot weight {min}"
            )));
        }
        self.substitute(ExtNat::Fin(k))
    }
}
