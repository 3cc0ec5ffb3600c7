//! Exact geometric representation of a Coxeter system over a real quadratic
//! field.
//!
//! The Tits representation sends generator `s_i` to the reflection
//! `v -> v - 2 B(e_i, v) e_i` where `B(e_i, e_j) = -cos(pi / m_ij)`.  It is
//! faithful, so matrices are exact element keys for ball enumeration.  The
//! cosines involved lie in `Q(sqrt(d))` as long as every edge weight is in
//! {3, inf} (rational), or additionally one of 4 (`d = 2`), 6 (`d = 3`),
//! 5 (`d = 5`).

use crate::model::{DyerGraph, ExtNat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An element `a + b sqrt(d)` of a fixed real quadratic field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
}

impl Quad {
    fn zero() -> Quad {
        Quad { a: BigRational::zero(), b: BigRational::zero() }
    }

    fn one() -> Quad {
        Quad { a: BigRational::one(), b: BigRational::zero() }
    }

    fn rat(n: i64, d: i64) -> Quad {
        Quad {
            a: BigRational::new(BigInt::from(n), BigInt::from(d)),
            b: BigRational::zero(),
        }
    }

    fn surd(n: i64, d: i64) -> Quad {
        Quad {
            a: BigRational::zero(),
            b: BigRational::new(BigInt::from(n), BigInt::from(d)),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul_add_into(&self, other: &Quad, d: &BigRational, acc: &mut Quad) {
        if self.is_zero() || other.is_zero() {
            return;
        }
        acc.a += &self.a * &other.a + &self.b * &other.b * d;
        acc.b += &self.a * &other.b + &self.b * &other.a;
    }
}

/// A dense square matrix over `Q(sqrt(d))`, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadMatrix {
    pub n: usize,
    pub entries: Vec<Quad>,
}

impl QuadMatrix {
    pub fn identity(n: usize) -> QuadMatrix {
        let mut entries = vec![Quad::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Quad::one();
        }
        QuadMatrix { n, entries }
    }

    /// `self * other`; quadratic in `n` per output entry.
    pub fn mul(&self, other: &QuadMatrix, d: i64) -> QuadMatrix {
        let n = self.n;
        let dq = BigRational::from(BigInt::from(d));
        let mut entries = vec![Quad::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &self.entries[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &other.entries[k * n + j];
                    x.mul_add_into(y, &dq, &mut entries[i * n + j]);
                }
            }
        }
        QuadMatrix { n, entries }
    }

    /// A canonical byte key: length-prefixed exact entries, injective because
    /// rationals are stored reduced with positive denominator.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for q in &self.entries {
            for part in [&q.a, &q.b] {
                for int in [part.numer(), part.denom()] {
                    let bytes = int.to_signed_bytes_le();
                    out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
                    out.extend_from_slice(&bytes);
                }
            }
        }
        out
    }
}

/// The reflection representation of `g`, when all generator orders are 2 and
/// all edge weights fit one quadratic field.  Returns `(d, matrices)`.
pub fn reflection_rep(g: &DyerGraph) -> Option<(i64, Vec<QuadMatrix>)> {
    let n = g.rank();
    for i in 0..n {
        if g.vertex_weight(i) != ExtNat::Fin(2) {
            return None;
        }
    }
    let mut d: Option<i64> = None;
    for (_, _, m) in g.edges() {
        let need = match m {
            ExtNat::Fin(3) | ExtNat::Inf => None,
            ExtNat::Fin(4) => Some(2),
            ExtNat::Fin(5) => Some(5),
            ExtNat::Fin(6) => Some(3),
            _ => return None,
        };
        if let Some(nd) = need {
            match d {
                None => d = Some(nd),
                Some(cur) if cur == nd => {}
                Some(_) => return None,
            }
        }
    }
    let d = d.unwrap_or(2);
    // twice_cos(m) = 2 cos(pi / m) as an element of Q(sqrt(d)).
    let twice_cos = |m: ExtNat| -> Quad {
        match m {
            ExtNat::Fin(2) => Quad::zero(),
            ExtNat::Fin(3) => Quad::rat(1, 1),
            ExtNat::Fin(4) => Quad::surd(1, 1),
            ExtNat::Fin(5) => Quad { a: Quad::rat(1, 2).a, b: Quad::surd(1, 2).b },
            ExtNat::Fin(6) => Quad::surd(1, 1),
            ExtNat::Inf => Quad::rat(2, 1),
            _ => unreachable!(),
        }
    };
    let mut mats = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = QuadMatrix::identity(n);
        for j in 0..n {
            if j == i {
                m.entries[i * n + i] = Quad::rat(-1, 1);
            } else {
                // s_i(e_j) = e_j + 2 cos(pi/m_ij) e_i.
                m.entries[i * n + j] = twice_cos(g.pair_weight(i, j));
            }
        }
        mats.push(m);
    }
    Some((d, mats))
}
