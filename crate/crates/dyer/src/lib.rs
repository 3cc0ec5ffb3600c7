//! Exact computation with marked Dyer systems.
//!
//! A Dyer system is a group presented by generators of orders `f_i` together
//! with braid-type relations `[s_i, s_j]_{m_ij} = [s_j, s_i]_{m_ij}`, where
//! `m_ij = 2` whenever a generator has order at least 3.  The class subsumes
//! Coxeter systems (all `f_i = 2`), graph products of cyclic groups, and
//! right-angled Artin groups.
//!
//! The crate provides:
//!
//! - [`model`]: Dyer graphs and matrices, the graph/matrix bijection, the
//!   induced Coxeter graph, spherical/Euclidean classification, and the
//!   weight-monotone partial order on Dyer graphs.
//! - [`words`]: the syllabic rewriting system solving the word problem,
//!   ShortLex normal forms, a Cayley-ball BFS oracle, and the marked-group
//!   agreement radius.
//! - [`series`]: exact integer polynomial and rational series arithmetic,
//!   growth polynomials of spherical systems, and the parabolic recursion
//!   for growth series.
//! - [`analysis`]: certified growth-rate intervals via Sturm root isolation,
//!   monotonicity checks, and convergence experiments over weight families.
//! - [`cli`]: the command-line front end used by the `dyer` binary.

pub mod analysis;
pub mod cli;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod model;
pub mod series;
pub mod words;

pub use model::{CoxeterGraph, DyerGraph, DyerMatrix, ExtNat};
pub use series::{IntPoly, RationalSeries};
pub use words::{GrowthTable, Syllable, SyllabicWord};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Dyer graph: {0}")]
    InvalidGraph(String),
    #[error("invalid Dyer matrix: {0}")]
    InvalidMatrix(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
