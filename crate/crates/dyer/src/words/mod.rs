//! Syllabic words and the rewriting system solving the word problem.
//!
//! A syllable is a power `s_i^k` of a generator, stored with the canonical
//! exponent: the representative of `k` mod `f_i` of minimal absolute value,
//! ties at `f_i / 2` resolved to the positive one.  Two elementary operations
//! rewrite syllabic words without changing the group element:
//!
//! * type I merges (or cancels) two consecutive syllables of the same type,
//!   strictly decreasing the degree;
//! * type II applies a commutation (`m = 2`) or replaces an alternating block
//!   `[s, t]_m` by `[t, s]_m` for finite `m >= 3`, preserving the degree.
//!
//! A word is reduced exactly when no operation sequence shortens it; the set
//! of reduced words of an element is closed under type II, and its ShortLex
//! minimum is the normal form.

mod ball;
mod reflection;

pub use ball::{ball, ball_elements, marking_agreement_radius, Budgets};
#[cfg(test)]
pub(crate) use ball::ball_generic;

use crate::model::{DyerGraph, ExtNat};
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::HashSet;

/// A generator power `s_gen^exp` with nonzero canonical exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Syllable {
    pub gen: u16,
    pub exp: i32,
}

impl Syllable {
    /// ShortLex key: generator index, then |exp|, then sign (+ before -).
    fn key(self) -> (u16, i32, bool) {
        (self.gen, self.exp.abs(), self.exp < 0)
    }
}

/// A finite sequence of syllables; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SyllabicWord(pub Vec<Syllable>);

impl SyllabicWord {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Exponent sum: total |exp| over the syllables.
    pub fn exponent_sum(&self) -> u64 {
        self.0.iter().map(|s| s.exp.unsigned_abs() as u64).sum()
    }

    pub fn inverse(&self) -> SyllabicWord {
        SyllabicWord(
            self.0
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -s.exp })
                .collect(),
        )
    }

    pub fn concat(&self, other: &SyllabicWord) -> SyllabicWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SyllabicWord(v)
    }
}

/// The canonical exponent of `e` for a generator of order `f`:
/// minimal absolute residue, tie broken towards `+f/2`.  May be 0.
pub fn canonical_exp(f: ExtNat, e: i64) -> i64 {
    match f {
        ExtNat::Inf => e,
        ExtNat::Fin(p) => {
            let p = p as i64;
            let r = e.rem_euclid(p);
            if 2 * r > p {
                r - p
            } else {
                r
            }
        }
    }
}

fn check_gen(g: &DyerGraph, gen: usize) -> Result<()> {
    if gen >= g.rank() {
        return Err(Error::Domain(format!(
            "generator index {gen} out of range for rank {}",
            g.rank()
        )));
    }
    Ok(())
}

/// Appends `s_gen^exp` to `word`, merging with the last syllable when the
/// types agree and dropping trivial exponents.
fn push_syllable(g: &DyerGraph, word: &mut Vec<Syllable>, gen: u16, exp: i64) {
    let f = g.vertex_weight(gen as usize);
    let mut exp = exp;
    if let Some(last) = word.last() {
        if last.gen == gen {
            exp += last.exp as i64;
            word.pop();
        }
    }
    let e = canonical_exp(f, exp);
    if e != 0 {
        word.push(Syllable { gen, exp: e as i32 });
    }
}

/// Re-canonicalizes a syllable sequence: canonical exponents, no trivial
/// syllables, no two consecutive syllables of the same type (eager type I).
fn eager_reduce(g: &DyerGraph, sylls: &[Syllable]) -> Vec<Syllable> {
    // Left-to-right folding handles cascades: a cancellation re-exposes the
    // previous syllable, which the next push merges with.
    let mut out = Vec::with_capacity(sylls.len());
    for s in sylls {
        push_syllable(g, &mut out, s.gen, s.exp as i64);
    }
    out
}

/// Compression of a generator word into a syllabic word: maximal runs of one
/// generator become one canonical syllable, trivial syllables are dropped.
pub fn compress(g: &DyerGraph, letters: &[(usize, i64)]) -> Result<SyllabicWord> {
    let mut out = Vec::new();
    for &(gen, e) in letters {
        check_gen(g, gen)?;
        push_syllable(g, &mut out, gen as u16, e);
    }
    Ok(SyllabicWord(out))
}

/// Elementary operation of type I at `pos`: concatenates two consecutive
/// syllables of the same type (dropping a trivial result).  `None` when the
/// types differ.
pub fn apply_type1(g: &DyerGraph, w: &SyllabicWord, pos: usize) -> Option<SyllabicWord> {
    let (a, b) = (w.0.get(pos)?, w.0.get(pos + 1)?);
    if a.gen != b.gen {
        return None;
    }
    let e = canonical_exp(g.vertex_weight(a.gen as usize), a.exp as i64 + b.exp as i64);
    let mut v = Vec::with_capacity(w.0.len() - 1);
    v.extend_from_slice(&w.0[..pos]);
    if e != 0 {
        v.push(Syllable { gen: a.gen, exp: e as i32 });
    }
    v.extend_from_slice(&w.0[pos + 2..]);
    Some(SyllabicWord(v))
}

/// Elementary operation of type II starting at `pos`.
///
/// * `m = 2` (non-adjacent pair): swap two consecutive syllables of distinct
///   commuting types, any exponents.
/// * `3 <= m < inf` (then both orders are 2, so syllables are the generators
///   themselves): replace an alternating block `[s, t]_m` by `[t, s]_m`.
///
/// `None` when no block of the required shape starts at `pos`.
pub fn apply_type2(g: &DyerGraph, w: &SyllabicWord, pos: usize) -> Option<SyllabicWord> {
    let (a, b) = (w.0.get(pos)?, w.0.get(pos + 1)?);
    if a.gen == b.gen {
        return None;
    }
    match g.pair_weight(a.gen as usize, b.gen as usize) {
        ExtNat::Fin(2) => {
            let mut v = w.0.clone();
            v.swap(pos, pos + 1);
            Some(SyllabicWord(v))
        }
        ExtNat::Fin(m) => {
            let m = m as usize;
            if pos + m > w.0.len() {
                return None;
            }
            let block = &w.0[pos..pos + m];
            let alternating = block.iter().enumerate().all(|(k, s)| {
                let want = if k % 2 == 0 { a.gen } else { b.gen };
                s.gen == want && s.exp == 1
            });
            if !alternating {
                return None;
            }
            let mut v = w.0.clone();
            for (k, s) in v[pos..pos + m].iter_mut().enumerate() {
                s.gen = if k % 2 == 0 { b.gen } else { a.gen };
                *s = Syllable { gen: s.gen, exp: 1 };
            }
            Some(SyllabicWord(v))
        }
        ExtNat::Inf => None,
    }
}

/// A reduced, ShortLex-minimal representative of a group element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalForm {
    pub word: SyllabicWord,
    /// Degree of the reduced word: the syllabic length of the element.
    pub syllabic_length: usize,
    /// Exponent sum of the reduced word: the word length of the element.
    pub word_length: u64,
}

fn shortlex_less(a: &[Syllable], b: &[Syllable]) -> bool {
    if a.len() != b.len() {
        return a.len() < b.len();
    }
    for (x, y) in a.iter().zip(b) {
        if x.key() != y.key() {
            return x.key() < y.key();
        }
    }
    false
}

/// True when some type II operation applies somewhere in `word`.
fn any_type2(g: &DyerGraph, word: &[Syllable]) -> bool {
    for pos in 0..word.len().saturating_sub(1) {
        let (a, b) = (word[pos], word[pos + 1]);
        if a.gen == b.gen {
            continue;
        }
        match g.pair_weight(a.gen as usize, b.gen as usize) {
            ExtNat::Fin(2) => return true,
            ExtNat::Fin(m) => {
                let m = m as usize;
                if pos + m <= word.len() {
                    let alternating = word[pos..pos + m].iter().enumerate().all(|(k, s)| {
                        let want = if k % 2 == 0 { a.gen } else { b.gen };
                        s.gen == want && s.exp == 1
                    });
                    if alternating {
                        return true;
                    }
                }
            }
            ExtNat::Inf => {}
        }
    }
    false
}

/// Pushes every type II neighbor of `word` through `visit`.
fn for_each_type2_neighbor<Fv: FnMut(Vec<Syllable>)>(
    g: &DyerGraph,
    word: &[Syllable],
    mut visit: Fv,
) {
    let w = SyllabicWord(word.to_vec());
    for pos in 0..word.len().saturating_sub(1) {
        if let Some(nb) = apply_type2(g, &w, pos) {
            visit(nb.0);
        }
    }
}

/// First available type I shortening inside `word`, fully re-canonicalized.
fn find_type1(g: &DyerGraph, word: &[Syllable]) -> Option<Vec<Syllable>> {
    for pos in 0..word.len().saturating_sub(1) {
        if word[pos].gen == word[pos + 1].gen {
            return Some(eager_reduce(g, word));
        }
    }
    None
}

/// Direct normal form for graph products of cyclic groups (every pair
/// weight in {2, inf}): the type II moves are exactly the commutations, so
/// the reduced expressions of an element are the linearizations of a trace.
///
/// Reduction: each syllable merges with the nearest earlier syllable of its
/// type that it can reach across commuting syllables; cancellations re-feed
/// the displaced suffix.  The ShortLex minimum is then the greedy minimal
/// linearization of the dependence order.
fn graph_product_nf(g: &DyerGraph, sylls: &[Syllable]) -> Vec<Syllable> {
    let commutes =
        |a: u16, b: u16| a != b && g.pair_weight(a as usize, b as usize) == ExtNat::Fin(2);
    let mut word: Vec<Syllable> = Vec::with_capacity(sylls.len());
    let mut pending: Vec<Syllable> = sylls.iter().rev().copied().collect();
    while let Some(x) = pending.pop() {
        let e = canonical_exp(g.vertex_weight(x.gen as usize), x.exp as i64);
        if e == 0 {
            continue;
        }
        let x = Syllable { gen: x.gen, exp: e as i32 };
        let mut k = word.len();
        let mut merged = false;
        while k > 0 {
            let prev = word[k - 1];
            if prev.gen == x.gen {
                let e = canonical_exp(
                    g.vertex_weight(x.gen as usize),
                    prev.exp as i64 + x.exp as i64,
                );
                // Re-feed the displaced suffix: a cancellation can expose
                // further merges across it.
                let suffix: Vec<Syllable> = word.drain(k - 1..).collect();
                for &s in suffix[1..].iter().rev() {
                    pending.push(s);
                }
                if e != 0 {
                    pending.push(Syllable { gen: x.gen, exp: e as i32 });
                }
                merged = true;
                break;
            }
            if commutes(prev.gen, x.gen) {
                k -= 1;
            } else {
                break;
            }
        }
        if !merged {
            word.push(x);
        }
    }
    // Greedy minimal linearization: repeatedly emit the ShortLex-smallest
    // syllable all of whose unemitted predecessors commute with it.
    let n = word.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if used[i] {
                continue;
            }
            let free = (0..i).all(|j| used[j] || commutes(word[j].gen, word[i].gen));
            if free && best.is_none_or(|b| word[i].key() < word[b].key()) {
                best = Some(i);
            }
        }
        let b = best.expect("dependence order always has a minimal element");
        used[b] = true;
        out.push(word[b]);
    }
    out
}

/// Computes the ShortLex normal form of the element represented by `w`.
///
/// Searches the closure of `w` under the elementary operations, restarting
/// from any strictly shorter word; when the full type II closure of a word
/// admits no type I move, that closure is the set of reduced expressions of
/// the element and its ShortLex minimum is returned.  Systems without a
/// finite braid relation take a direct quadratic path instead.
///
/// `closure_budget` caps the number of distinct words explored per closure;
/// exceeding it is a resource error, never a wrong answer.
pub fn normal_form(g: &DyerGraph, w: &SyllabicWord, closure_budget: usize) -> Result<NormalForm> {
    for s in &w.0 {
        check_gen(g, s.gen as usize)?;
    }
    if g.edges().all(|(_, _, m)| m == ExtNat::Inf) {
        return Ok(make_nf(graph_product_nf(g, &w.0)));
    }
    closure_normal_form(g, w, closure_budget)
}

/// The generic closure search behind [`normal_form`].
fn closure_normal_form(
    g: &DyerGraph,
    w: &SyllabicWord,
    closure_budget: usize,
) -> Result<NormalForm> {
    let mut cur = eager_reduce(g, &w.0);
    'outer: loop {
        if !any_type2(g, &cur) {
            return Ok(make_nf(cur));
        }
        let mut seen: HashSet<Box<[Syllable]>> = HashSet::new();
        let first: Box<[Syllable]> = cur.clone().into_boxed_slice();
        let mut best = first.clone();
        seen.insert(first.clone());
        let mut stack: Vec<Box<[Syllable]>> = vec![first];
        while let Some(word) = stack.pop() {
            let mut shorter: Option<Vec<Syllable>> = None;
            for_each_type2_neighbor(g, &word, |nb| {
                if shorter.is_some() {
                    return;
                }
                if let Some(s) = find_type1(g, &nb) {
                    shorter = Some(s);
                    return;
                }
                let boxed = nb.into_boxed_slice();
                if !seen.contains(&boxed) {
                    if shortlex_less(&boxed, &best) {
                        best = boxed.clone();
                    }
                    seen.insert(boxed.clone());
                    stack.push(boxed);
                }
            });
            if let Some(s) = shorter {
                cur = s;
                continue 'outer;
            }
            if seen.len() > closure_budget {
                return Err(Error::Budget(format!(
                    "rewriting closure exceeded {closure_budget} states"
                )));
            }
        }
        return Ok(make_nf(best.into_vec()));
    }
}

fn make_nf(word: Vec<Syllable>) -> NormalForm {
    let w = SyllabicWord(word);
    NormalForm {
        syllabic_length: w.degree(),
        word_length: w.exponent_sum(),
        word: w,
    }
}

/// Word length `|pi(w)|_S` of the element represented by `w`.
pub fn word_length(g: &DyerGraph, w: &SyllabicWord, closure_budget: usize) -> Result<u64> {
    Ok(normal_form(g, w, closure_budget)?.word_length)
}

/// Per-degree sphere sizes `a(m)` and cumulative ball sizes `b(m)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrowthTable {
    pub a: Vec<BigUint>,
    pub b: Vec<BigUint>,
}

impl GrowthTable {
    pub fn from_sphere_sizes(a: Vec<BigUint>) -> GrowthTable {
        let mut b = Vec::with_capacity(a.len());
        let mut acc = BigUint::default();
        for x in &a {
            acc += x;
            b.push(acc.clone());
        }
        GrowthTable { a, b }
    }
}
