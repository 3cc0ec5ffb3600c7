//! Exact polynomial and rational-series arithmetic, base-case growth
//! polynomials, and the parabolic recursion computing growth series.
//!
//! For a non-spherical Dyer system the growth series satisfies
//!
//! ```text
//! (-1)^(#S+1) / f_(D,S) = sum over proper subsets T of S of (-1)^#T / f_(D_T,T)
//! ```
//!
//! with every parabolic subsystem again a Dyer system on the induced full
//! subgraph.  The recursion bottoms out at spherical systems, whose series
//! are closed-form products.

use crate::model::{
    classify_dyer, partition_generators, CoxeterGraph, DyerGraph, ExtNat, Kind,
};
use crate::words::GrowthTable;
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Maximum rank accepted by [`growth_series`]; the recursion touches all
/// 2^n full subgraphs with 3^n subset-pair work.
pub const RANK_CAP: usize = 14;

/// An integer polynomial, constant term first, no trailing zeros.
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly::default()
    }

    pub fn one() -> IntPoly {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn div_content(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        }
    }

    /// Exact division; panics if `other` does not divide `self`.
    pub fn div_exact(&self, other: &IntPoly) -> IntPoly {
        assert!(!other.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let d = other.coeffs.len() - 1;
        let lead = BigRational::from(other.coeffs[d].clone());
        assert!(rem.len() > d || rem.iter().all(Zero::is_zero));
        let mut q = vec![BigRational::zero(); rem.len() - d];
        for k in (0..q.len()).rev() {
            let c = &rem[k + d] / &lead;
            if !c.is_zero() {
                for (j, oc) in other.coeffs.iter().enumerate() {
                    let sub = &c * BigRational::from(oc.clone());
                    rem[k + j] -= sub;
                }
            }
            q[k] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        IntPoly::from_coeffs(
            q.into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "inexact polynomial division");
                    c.to_integer()
                })
                .collect(),
        )
    }
}

/// Primitive gcd with positive leading coefficient; `gcd(0, p) = +-p`.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    // Euclid over Q, then clear denominators and the content.
    let mut a: Vec<BigRational> = a.coeffs.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut b: Vec<BigRational> = b.coeffs.iter().map(|c| BigRational::from(c.clone())).collect();
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        while a.len() >= b.len() {
            let c = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (j, bc) in b.iter().enumerate() {
                let sub = &c * bc;
                a[shift + j] -= sub;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        return IntPoly::zero();
    }
    // Clear denominators, divide by content, force a positive leading term.
    let denom_lcm = a
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = IntPoly::from_coeffs(
        a.iter()
            .map(|c| (c * BigRational::from(denom_lcm.clone())).to_integer())
            .collect(),
    );
    let mut out = ints.div_content(&ints.content());
    if out.coeffs.last().is_some_and(Signed::is_negative) {
        out = out.neg();
    }
    out
}

/// A reduced rational function `num/den` with `den(0) > 0`, representing the
/// power series `num/den` around 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalSeries {
    num: IntPoly,
    den: IntPoly,
}

impl RationalSeries {
    /// Reduces and normalizes.  `den` must be nonzero with `den(0) != 0`.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<RationalSeries> {
        if den.is_zero() {
            return Err(Error::Domain("rational series with zero denominator".into()));
        }
        if den.coeff(0).is_zero() {
            return Err(Error::Domain(
                "rational series denominator vanishes at 0".into(),
            ));
        }
        if num.is_zero() {
            return Ok(RationalSeries { num: IntPoly::zero(), den: IntPoly::one() });
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let c = num.content().gcd(&den.content());
        num = num.div_content(&c);
        den = den.div_content(&c);
        if den.coeff(0).is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RationalSeries { num, den })
    }

    pub fn from_poly(p: IntPoly) -> RationalSeries {
        RationalSeries { num: p, den: IntPoly::one() }
    }

    pub fn one() -> RationalSeries {
        RationalSeries::from_poly(IntPoly::one())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RationalSeries::new(num, den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &RationalSeries) -> RationalSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalSeries {
        RationalSeries { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RationalSeries) -> RationalSeries {
        RationalSeries::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }

    pub fn div(&self, other: &RationalSeries) -> Result<RationalSeries> {
        self.mul_inverse(other)
    }

    fn mul_inverse(&self, other: &RationalSeries) -> Result<RationalSeries> {
        RationalSeries::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// `1/self`; fails when the numerator vanishes at 0 (not a power series).
    pub fn invert(&self) -> Result<RationalSeries> {
        RationalSeries::new(self.den.clone(), self.num.clone())
    }
}

impl Serialize for RationalSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs = |p: &IntPoly| -> Vec<String> {
            p.coeffs.iter().map(BigInt::to_string).collect()
        };
        let mut st = s.serialize_struct("RationalSeries", 2)?;
        st.serialize_field("num", &strs(&self.num))?;
        st.serialize_field("den", &strs(&self.den))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RationalSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Vec<String>,
            den: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let parse = |v: Vec<String>| -> std::result::Result<IntPoly, D::Error> {
            let coeffs = v
                .into_iter()
                .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(IntPoly::from_coeffs(coeffs))
        };
        RationalSeries::new(parse(raw.num)?, parse(raw.den)?)
            .map_err(serde::de::Error::custom)
    }
}

/// Growth series of the cyclic group of order `p` (or of `Z` for `inf`)
/// with respect to one generator.
pub fn cyclic_growth(p: ExtNat) -> RationalSeries {
    match p {
        ExtNat::Inf => RationalSeries::new(IntPoly::from_i64(&[1, 1]), IntPoly::from_i64(&[1, -1]))
            .expect("static denominator"),
        ExtNat::Fin(p) => {
            let m = (p / 2) as usize;
            let mut coeffs = vec![BigInt::from(2); m + 1];
            coeffs[0] = BigInt::one();
            if p % 2 == 0 {
                coeffs[m] = BigInt::one();
            }
            RationalSeries::from_poly(IntPoly::from_coeffs(coeffs))
        }
    }
}

fn poly_ones(e: u64) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::one(); e as usize + 1])
}

/// Growth polynomial of a spherical Coxeter system: the product over the
/// exponents `e` of each irreducible component of `1 + z + ... + z^e`.
pub fn spherical_coxeter_poly(g: &CoxeterGraph) -> Result<IntPoly> {
    let verdict = crate::model::classify_coxeter(g);
    if verdict.kind != Kind::Spherical {
        return Err(Error::Domain(format!(
            "growth polynomial requires a spherical Coxeter graph, got {:?}",
            verdict.kind
        )));
    }
    let mut out = IntPoly::one();
    for c in &verdict.components {
        let ty = c.ty.expect("spherical verdicts carry types");
        for e in ty.exponents().expect("spherical types have exponents") {
            out = out.mul(&poly_ones(e));
        }
    }
    Ok(out)
}

/// Closed-form series of a spherical Dyer system: the heavy vertices are
/// isolated, so the group is `D_2 x (product of C_p) x Z^(#V_inf)`.
fn spherical_dyer_series(g: &DyerGraph) -> Result<RationalSeries> {
    let (v2, vp, vinf) = partition_generators(g);
    let cox = CoxeterGraph::try_from_dyer(g.induced_subgraph(&v2))?;
    let mut out = RationalSeries::from_poly(spherical_coxeter_poly(&cox)?);
    for &v in &vp {
        out = out.mul(&cyclic_growth(g.vertex_weight(v)));
    }
    for _ in &vinf {
        out = out.mul(&cyclic_growth(ExtNat::Inf));
    }
    Ok(out)
}

/// Exact growth series of `(D, S)` in the generators `S`.
///
/// Spherical systems get the closed-form product.  Everything else is
/// solved from the parabolic recursion over all proper full subgraphs,
/// memoized by vertex subset.
pub fn growth_series(g: &DyerGraph) -> Result<RationalSeries> {
    let n = g.rank();
    if n > RANK_CAP {
        return Err(Error::Budget(format!(
            "rank {n} exceeds the recursion cap {RANK_CAP}"
        )));
    }
    // memo[mask] = (-1)^#T / f_T for the subsystem on vertex set `mask`.
    let mut memo: HashMap<u32, RationalSeries> = HashMap::new();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for mask in 0..=full {
        let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = g.induced_subgraph(&verts);
        let sign_t = verts.len() % 2 == 1;
        let signed = |f_inv: RationalSeries| if sign_t { f_inv.neg() } else { f_inv };
        let entry = if classify_dyer(&sub).kind == Kind::Spherical {
            signed(spherical_dyer_series(&sub)?.invert()?)
        } else {
            // (-1)^(#T+1)/f_T = sum over proper subsets, hence
            // (-1)^#T / f_T = - sum over proper subsets.
            let mut sum = RationalSeries::from_poly(IntPoly::zero());
            let mut u = (mask.wrapping_sub(1)) & mask;
            loop {
                sum = sum.add(&memo[&u]);
                if u == 0 {
                    break;
                }
                u = u.wrapping_sub(1) & mask;
            }
            sum.neg()
        };
        memo.insert(mask, entry);
        if mask == full {
            break;
        }
    }
    let g_full = &memo[&full];
    let f_inv = if n % 2 == 1 { g_full.neg() } else { g_full.clone() };
    if f_inv.is_zero() {
        return Err(Error::Domain(
            "parabolic recursion produced a zero series".into(),
        ));
    }
    f_inv.invert()
}

/// Expands a rational series into exact coefficients `a(0..=m_max)` with the
/// running ball sizes `b`.  Coefficients must be nonnegative integers, which
/// holds for every growth series.
pub fn series_coefficients(r: &RationalSeries, m_max: usize) -> Result<GrowthTable> {
    let den0 = r.den().coeff(0);
    if den0.is_zero() {
        return Err(Error::Domain("series denominator vanishes at 0".into()));
    }
    let mut a: Vec<BigUint> = Vec::with_capacity(m_max + 1);
    let mut signed: Vec<BigInt> = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let mut acc = r.num().coeff(m);
        for k in 1..=m.min(r.den().coeffs().len().saturating_sub(1)) {
            acc -= r.den().coeff(k) * &signed[m - k];
        }
        let (q, rem) = acc.div_rem(&den0);
        if !rem.is_zero() {
            return Err(Error::Domain(format!(
                "series expansion produced a non-integer coefficient at degree {m}"
            )));
        }
        let coeff = match q.sign() {
            Sign::Minus => {
                return Err(Error::Domain(format!(
                    "series expansion produced a negative coefficient at degree {m}"
                )))
            }
            _ => q.magnitude().clone(),
        };
        signed.push(q);
        a.push(coeff);
    }
    Ok(GrowthTable::from_sphere_sizes(a))
}
