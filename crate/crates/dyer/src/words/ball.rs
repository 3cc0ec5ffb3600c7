//! Cayley-ball enumeration and the marked-system agreement radius.
//!
//! Balls are enumerated level by level: every element of the sphere of
//! radius `m + 1` is a length-`m` element times one letter, because geodesic
//! prefixes are geodesics.  Letters are `s_i` (and `s_i^{-1}` when the
//! generator order is not 2); deduplication uses either ShortLex normal
//! forms (hashed to 128 bits) or, for Coxeter systems over one quadratic
//! field, exact matrices of the faithful reflection representation.

use super::reflection::reflection_rep;
use super::{normal_form, GrowthTable, Syllable, SyllabicWord};
use crate::model::{DyerGraph, ExtNat};
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{BuildHasherDefault, Hasher};

/// Resource caps for enumeration: total BFS states and rewriting-closure
/// size per normal-form computation.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub states: usize,
    pub closure: usize,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets { states: 1_000_000, closure: 1_000_000 }
    }
}

/// Two independent 64-bit fingerprints of a word.  128 bits keeps the
/// collision probability negligible at 10^7-element scales.
fn word_hash128(word: &[Syllable]) -> u128 {
    let mut h1 = DefaultHasher::new();
    let mut h2 = DefaultHasher::new();
    h1.write_u64(0x517c_c1b7_2722_0a95);
    h2.write_u64(0x2545_f491_4f6c_dd1d);
    for s in word {
        h1.write_u16(s.gen);
        h1.write_i32(s.exp);
        h2.write_i32(s.exp);
        h2.write_u16(s.gen);
    }
    ((h1.finish() as u128) << 64) | (h2.finish() as u128)
}

/// Pass-through hasher for keys that are already uniform fingerprints.
#[derive(Default)]
struct FingerprintHasher(u64);

impl Hasher for FingerprintHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = self.0.rotate_left(8) ^ b as u64;
        }
    }

    fn write_u128(&mut self, n: u128) {
        self.0 = n as u64;
    }
}

type FingerprintSet = HashSet<u128, BuildHasherDefault<FingerprintHasher>>;

/// The length-1 letters of `g`: `s_i`, plus `s_i^{-1}` unless `f_i = 2`.
fn letters(g: &DyerGraph) -> Vec<Syllable> {
    let mut out = Vec::new();
    for i in 0..g.rank() {
        out.push(Syllable { gen: i as u16, exp: 1 });
        if g.vertex_weight(i) != ExtNat::Fin(2) {
            out.push(Syllable { gen: i as u16, exp: -1 });
        }
    }
    out
}

fn budget_err(states: usize) -> Error {
    Error::Budget(format!("ball enumeration exceeded {states} states"))
}

/// Sphere and ball sizes of `(W, S)` up to radius `m_max`.
pub fn ball(g: &DyerGraph, m_max: usize, budgets: &Budgets) -> Result<GrowthTable> {
    if let Some((d, mats)) = reflection_rep(g) {
        return ball_matrix(g.rank(), d, &mats, m_max, budgets);
    }
    if g.edges().all(|(_, _, m)| m == ExtNat::Inf) {
        return ball_graph_product(g, m_max, budgets);
    }
    ball_generic(g, m_max, budgets)
}

/// Ball sizes by rewriting BFS with hash deduplication; works for every
/// system but revisits elements through all their predecessors.
pub(crate) fn ball_generic(g: &DyerGraph, m_max: usize, budgets: &Budgets) -> Result<GrowthTable> {
    let letters = letters(g);
    let mut seen = FingerprintSet::default();
    seen.insert(word_hash128(&[]));
    let mut frontier: Vec<Box<[Syllable]>> = vec![Box::from([])];
    let mut a = vec![BigUint::from(1u32)];
    for level in 0..m_max {
        let mut next: Vec<Box<[Syllable]>> = Vec::new();
        let mut count: u64 = 0;
        for w in &frontier {
            for &x in &letters {
                let mut product = w.to_vec();
                product.push(x);
                let nf = normal_form(g, &SyllabicWord(product), budgets.closure)?;
                if nf.word_length != level as u64 + 1 {
                    continue;
                }
                if seen.insert(word_hash128(&nf.word.0)) {
                    count += 1;
                    if seen.len() > budgets.states {
                        return Err(budget_err(budgets.states));
                    }
                    if level + 1 < m_max {
                        next.push(nf.word.0.into_boxed_slice());
                    }
                }
            }
        }
        a.push(BigUint::from(count));
        if count == 0 {
            // The group is exhausted; later spheres stay empty.
            a.resize(m_max + 1, BigUint::default());
            break;
        }
        frontier = next;
    }
    Ok(GrowthTable::from_sphere_sizes(a))
}

/// Duplicate-free ball enumeration for graph products of cyclic groups
/// (every pair weight in {2, inf}).
///
/// Canonical words (greedy-minimal trace linearizations with canonical
/// exponents) are in bijection with elements, and each canonical word of
/// word length `l + 1` has a unique designated predecessor of length `l`:
/// drop one unit, sign kept, from its last syllable.  Enumerating only the
/// designated extensions therefore produces every element exactly once,
/// with no deduplication set and no normal-form computation:
///
/// * grow the last syllable by one unit when the canonical sum keeps the
///   sign and gains one unit of absolute value;
/// * append `s_g^{+-1}` when no syllable of the maximal commuting suffix
///   blocks it: a same-generator syllable there would merge, and a larger
///   generator index would contradict greedy minimality.  Exponents never
///   matter for minimality because only distinct generators ever commute.
fn ball_graph_product(g: &DyerGraph, m_max: usize, budgets: &Budgets) -> Result<GrowthTable> {
    let n = g.rank();
    let commutes = |a: u16, b: u16| g.pair_weight(a as usize, b as usize) == ExtNat::Fin(2);
    let mut frontier: Vec<Box<[Syllable]>> = vec![Box::from([])];
    let mut a = vec![BigUint::from(1u32)];
    let mut total: usize = 1;
    for level in 0..m_max {
        let mut next: Vec<Box<[Syllable]>> = Vec::new();
        for w in &frontier {
            if let Some(last) = w.last() {
                let f = g.vertex_weight(last.gen as usize);
                let sign = if last.exp > 0 { 1 } else { -1 };
                let e = super::canonical_exp(f, last.exp as i64 + sign);
                if e.unsigned_abs() == last.exp.unsigned_abs() as u64 + 1
                    && (e > 0) == (last.exp > 0)
                {
                    let mut grown = w.to_vec();
                    grown.last_mut().unwrap().exp = e as i32;
                    next.push(grown.into_boxed_slice());
                }
            }
            'gen: for gen in 0..n as u16 {
                for s in w.iter().rev() {
                    if s.gen == gen {
                        // Visible same generator: the word would merge.
                        continue 'gen;
                    }
                    if !commutes(s.gen, gen) {
                        break;
                    }
                    if s.gen > gen {
                        // The new letter could commute below a larger
                        // generator: not the greedy-minimal linearization.
                        continue 'gen;
                    }
                }
                let mut exps: &[i32] = &[1, -1];
                if g.vertex_weight(gen as usize) == ExtNat::Fin(2) {
                    exps = &[1];
                }
                for &exp in exps {
                    let mut appended = Vec::with_capacity(w.len() + 1);
                    appended.extend_from_slice(w);
                    appended.push(Syllable { gen, exp });
                    next.push(appended.into_boxed_slice());
                }
            }
        }
        total += next.len();
        if total > budgets.states {
            return Err(budget_err(budgets.states));
        }
        a.push(BigUint::from(next.len() as u64));
        if next.is_empty() {
            a.resize(m_max + 1, BigUint::default());
            break;
        }
        if level + 1 < m_max {
            frontier = next;
        }
    }
    Ok(GrowthTable::from_sphere_sizes(a))
}

fn ball_matrix(
    n: usize,
    d: i64,
    mats: &[super::reflection::QuadMatrix],
    m_max: usize,
    budgets: &Budgets,
) -> Result<GrowthTable> {
    use super::reflection::QuadMatrix;
    let identity = QuadMatrix::identity(n);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(identity.key());
    let mut frontier: Vec<QuadMatrix> = vec![identity];
    let mut a = vec![BigUint::from(1u32)];
    for _ in 0..m_max {
        let mut next = Vec::new();
        let mut count: u64 = 0;
        for m in &frontier {
            for s in mats {
                let p = m.mul(s, d);
                if seen.insert(p.key()) {
                    count += 1;
                    if seen.len() > budgets.states {
                        return Err(budget_err(budgets.states));
                    }
                    next.push(p);
                }
            }
        }
        // In a Coxeter system every multiplication by a generator changes
        // the length by exactly 1, so new matrices lie in the next sphere.
        a.push(BigUint::from(count));
        if count == 0 {
            a.resize(m_max + 1, BigUint::default());
            break;
        }
        frontier = next;
    }
    Ok(GrowthTable::from_sphere_sizes(a))
}

/// Normal forms of all elements of the ball, grouped by word length.
pub fn ball_elements(
    g: &DyerGraph,
    m_max: usize,
    budgets: &Budgets,
) -> Result<Vec<Vec<SyllabicWord>>> {
    let letters = letters(g);
    let mut seen: HashSet<SyllabicWord> = HashSet::new();
    seen.insert(SyllabicWord::default());
    let mut levels = vec![vec![SyllabicWord::default()]];
    for level in 0..m_max {
        let mut next = Vec::new();
        for w in &levels[level] {
            for &x in &letters {
                let mut product = w.0.clone();
                product.push(x);
                let nf = normal_form(g, &SyllabicWord(product), budgets.closure)?;
                if nf.word_length != level as u64 + 1 {
                    continue;
                }
                if seen.insert(nf.word.clone()) {
                    if seen.len() > budgets.states {
                        return Err(budget_err(budgets.states));
                    }
                    next.push(nf.word);
                }
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// Largest `r <= r_max` such that the markings of `g1` and `g2` agree on
/// the radius-`r` ball of the free group: every word of length at most `r`
/// is trivial in one system exactly when it is trivial in the other.
///
/// Runs a BFS on pairs of normal forms.  A free word and its image pair
/// determine each other's triviality pattern, so the first level at which a
/// pair with differing triviality appears is the first disagreement length.
pub fn marking_agreement_radius(
    g1: &DyerGraph,
    g2: &DyerGraph,
    r_max: usize,
    budgets: &Budgets,
) -> Result<usize> {
    if g1.rank() != g2.rank() {
        return Err(Error::Domain(format!(
            "marked systems must share a rank: {} vs {}",
            g1.rank(),
            g2.rank()
        )));
    }
    let n = g1.rank();
    let mut free_letters = Vec::with_capacity(2 * n);
    for i in 0..n {
        free_letters.push(Syllable { gen: i as u16, exp: 1 });
        free_letters.push(Syllable { gen: i as u16, exp: -1 });
    }
    let pair_hash = |a: &[Syllable], b: &[Syllable]| -> u128 {
        let mut h1 = DefaultHasher::new();
        let mut h2 = DefaultHasher::new();
        h1.write_u64(0x9e37_79b9_7f4a_7c15);
        h2.write_u64(0xc2b2_ae3d_27d4_eb4f);
        for (hx, sep) in [(&mut h1, 0u16), (&mut h2, 1u16)] {
            for s in a {
                hx.write_u16(s.gen);
                hx.write_i32(s.exp);
            }
            hx.write_u16(u16::MAX - sep);
            for s in b {
                hx.write_u16(s.gen);
                hx.write_i32(s.exp);
            }
        }
        ((h1.finish() as u128) << 64) | (h2.finish() as u128)
    };
    let mut seen = FingerprintSet::default();
    seen.insert(pair_hash(&[], &[]));
    let mut frontier: Vec<(SyllabicWord, SyllabicWord)> =
        vec![(SyllabicWord::default(), SyllabicWord::default())];
    for level in 0..r_max {
        let mut next = Vec::new();
        for (w1, w2) in &frontier {
            for &x in &free_letters {
                let mut p1 = w1.0.clone();
                p1.push(x);
                let mut p2 = w2.0.clone();
                p2.push(x);
                let nf1 = normal_form(g1, &SyllabicWord(p1), budgets.closure)?;
                let nf2 = normal_form(g2, &SyllabicWord(p2), budgets.closure)?;
                if nf1.word.0.is_empty() != nf2.word.0.is_empty() {
                    return Ok(level);
                }
                if seen.insert(pair_hash(&nf1.word.0, &nf2.word.0)) {
                    if seen.len() > budgets.states {
                        return Err(budget_err(budgets.states));
                    }
                    next.push((nf1.word, nf2.word));
                }
            }
        }
        frontier = next;
    }
    Ok(r_max)
}
