//! Growth-rate extraction and the monotonicity/continuity experiments.
//!
//! The growth rate is the reciprocal of the radius of convergence of the
//! growth series.  Growth coefficients are nonnegative, so the radius is
//! realized by a positive real singularity: the smallest real root of the
//! reduced denominator in (0, 1).  The root is isolated by Sturm counts and
//! certified by bisection, so every reported rate is a rational interval,
//! never a float estimate.

mod family;

pub use family::{GraphFamily, Slot};

use crate::model::{classify_dyer, find_order_morphism, DyerGraph, ExtNat, Kind};
use crate::series::{growth_series, series_coefficients, IntPoly, RationalSeries};
use crate::words::GrowthTable;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

/// Default tolerance on the isolated root: the bracket is narrowed until the
/// induced tau interval has width at most `tol * tau`.
pub fn default_tol() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64.pow(10)))
}

/// Degree at which the expansion-ratio sanity check is performed, and the
/// multiplicative widening applied to the certified interval for it.
const SANITY_DEGREE: usize = 40;
const SANITY_WIDEN_NUM: i64 = 4;
const SANITY_WIDEN_DEN: i64 = 5;

/// A certified interval around the growth rate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrowthRateResult {
    pub tau_lower: BigRational,
    pub tau_upper: BigRational,
    /// Set exactly when the system is spherical or Euclidean; then both
    /// bounds are exactly 1.
    pub is_one: bool,
}

impl GrowthRateResult {
    fn exactly_one() -> GrowthRateResult {
        GrowthRateResult {
            tau_lower: BigRational::one(),
            tau_upper: BigRational::one(),
            is_one: true,
        }
    }

    pub fn approx(&self) -> (f64, f64) {
        (
            self.tau_lower.to_f64().unwrap_or(f64::NAN),
            self.tau_upper.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Serialize for GrowthRateResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (lo, hi) = self.approx();
        let mut st = s.serialize_struct("GrowthRateResult", 5)?;
        st.serialize_field("tau_lower", &self.tau_lower.to_string())?;
        st.serialize_field("tau_upper", &self.tau_upper.to_string())?;
        st.serialize_field("approx_lower", &lo)?;
        st.serialize_field("approx_upper", &hi)?;
        st.serialize_field("is_one", &self.is_one)?;
        st.end()
    }
}

type QPoly = Vec<BigRational>;

fn to_qpoly(p: &IntPoly) -> QPoly {
    p.coeffs()
        .iter()
        .map(|c| BigRational::from(c.clone()))
        .collect()
}

fn q_trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn q_derivative(p: &QPoly) -> QPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
        .collect()
}

fn q_eval(p: &QPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Remainder of `a` divided by `b`, scaled to leading coefficient +-1 to
/// keep the numbers small (positive scaling preserves Sturm signs).
fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    q_trim(&mut r);
    while r.len() >= b.len() {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - b.len();
        for (j, bc) in b.iter().enumerate() {
            let sub = &c * bc;
            r[shift + j] -= sub;
        }
        q_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    if let Some(lead) = r.last() {
        let scale = lead.abs();
        if !scale.is_zero() && !scale.is_one() {
            for c in &mut r {
                *c /= &scale;
            }
        }
    }
    r
}

/// Sturm chain of the square-free part of `p`.
struct Sturm {
    chain: Vec<QPoly>,
}

impl Sturm {
    fn new(p: &IntPoly) -> Sturm {
        let mut p0 = to_qpoly(p);
        q_trim(&mut p0);
        // Square-free part: p / gcd(p, p').
        let d = to_qpoly(&crate::series::poly_gcd(
            p,
            &IntPoly::from_coeffs(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c * BigInt::from(k))
                    .collect(),
            ),
        ));
        if d.len() > 1 {
            p0 = q_div_exact(&p0, &d);
        }
        let mut chain = vec![p0.clone()];
        let mut p1 = q_derivative(&p0);
        q_trim(&mut p1);
        while !p1.is_empty() {
            let r = q_rem(&chain.last().unwrap().clone(), &p1);
            chain.push(p1);
            if r.is_empty() {
                break;
            }
            p1 = r.iter().map(|c| -c).collect();
        }
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = q_eval(p, x);
            if v.is_zero() {
                continue;
            }
            let sign = v.is_positive();
            if let Some(prev) = last {
                if prev != sign {
                    count += 1;
                }
            }
            last = Some(sign);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations(lo) - self.variations(hi)
    }

    fn square_free(&self) -> &QPoly {
        &self.chain[0]
    }
}

fn q_div_exact(a: &QPoly, b: &QPoly) -> QPoly {
    let mut rem = a.clone();
    let d = b.len() - 1;
    let mut q = vec![BigRational::zero(); rem.len() - d];
    for k in (0..q.len()).rev() {
        let c = &rem[k + d] / &b[d];
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                let sub = &c * bc;
                rem[k + j] -= sub;
            }
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Certified growth rate of `(D, S)`.
///
/// Spherical and Euclidean systems have rate exactly 1.  Otherwise the
/// smallest real root `r` of the reduced denominator in (0, 1) satisfies
/// `tau = 1/r`; it is bracketed by bisection guided by Sturm counts until
/// the tau interval is narrower than `tol * tau`, then cross-checked against
/// the expansion coefficients.
pub fn growth_rate(g: &DyerGraph, tol: &BigRational) -> Result<GrowthRateResult> {
    if !tol.is_positive() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    if classify_dyer(g).kind != Kind::Neither {
        return Ok(GrowthRateResult::exactly_one());
    }
    let f = growth_series(g)?;
    let result = smallest_root_rate(f.den(), tol)?;
    sanity_check_ratio(&f, &result)?;
    Ok(result)
}

fn smallest_root_rate(q: &IntPoly, tol: &BigRational) -> Result<GrowthRateResult> {
    let sturm = Sturm::new(q);
    let zero = BigRational::zero();
    let one = BigRational::one();
    let no_root = || {
        Error::Domain(
            "no real denominator root in (0, 1) for a non-spherical, \
             non-Euclidean system"
                .into(),
        )
    };
    // Right end of the bracket: 1 itself unless it is a root, in which case
    // step dyadically below it until the sought root is back inside.
    let mut hi = if q_eval(sturm.square_free(), &one).is_zero() {
        let mut u = None;
        for j in 1..=120 {
            let c = &one - BigRational::new(BigInt::one(), BigInt::one() << j);
            if sturm.count(&zero, &c) >= 1 {
                u = Some(c);
                break;
            }
        }
        u.ok_or_else(no_root)?
    } else {
        if sturm.count(&zero, &one) == 0 {
            return Err(no_root());
        }
        one
    };
    let mut lo = zero.clone();
    // Invariant: no root in (0, lo], at least one in (lo, hi].
    let two = BigRational::from(BigInt::from(2));
    loop {
        // Stop when 1/lo - 1/hi <= tol / hi, i.e. interval width tol * r^2
        // scale; lo = 0 never satisfies it.
        if !lo.is_zero() {
            let width = (&hi - &lo) / (&lo * &hi);
            let target = tol / &hi;
            if width <= target {
                break;
            }
        }
        let mid = (&lo + &hi) / &two;
        if sturm.count(&zero, &mid) == 0 {
            lo = mid;
        } else if q_eval(sturm.square_free(), &mid).is_zero() {
            // Landed exactly on the root.
            lo = &mid - (&hi - &mid) * tol;
            hi = mid;
            break;
        } else {
            hi = mid;
        }
    }
    // Certification: the bracket contains exactly one root of the
    // square-free part, with a sign change, and nothing below it.
    debug_assert_eq!(sturm.count(&zero, &lo), 0);
    debug_assert!(sturm.count(&lo, &hi) >= 1);
    let tau_lower = hi.recip();
    let tau_upper = lo.recip();
    Ok(GrowthRateResult { tau_lower, tau_upper, is_one: false })
}

/// The expansion ratio a(m+1)/a(m) at a fixed large degree must land inside
/// a widened copy of the certified interval.
fn sanity_check_ratio(f: &RationalSeries, r: &GrowthRateResult) -> Result<()> {
    let table = series_coefficients(f, SANITY_DEGREE + 1)?;
    let num = BigInt::from(table.a[SANITY_DEGREE + 1].clone());
    let den = BigInt::from(table.a[SANITY_DEGREE].clone());
    if den.is_zero() {
        return Err(Error::Domain(
            "vanishing growth coefficient in a non-spherical system".into(),
        ));
    }
    let ratio = BigRational::new(num, den);
    let widen = BigRational::new(BigInt::from(SANITY_WIDEN_NUM), BigInt::from(SANITY_WIDEN_DEN));
    let lo = &r.tau_lower * &widen;
    let hi = &r.tau_upper / &widen;
    if ratio < lo || ratio > hi {
        return Err(Error::Domain(format!(
            "coefficient ratio {ratio} escapes the certified interval \
             [{}, {}]",
            r.tau_lower, r.tau_upper
        )));
    }
    Ok(())
}

/// Outcome of a monotonicity check between comparable marked systems.
#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityVerdict {
    /// Vertex map witnessing `g <= g2` in the weight-monotone order.
    pub witness: Vec<usize>,
    /// `a'(m) - a(m)` for `m = 0..=m_max`, as decimal strings.
    pub margins: Vec<String>,
    pub coefficientwise_ok: bool,
    /// True unless the certified intervals prove `tau(g) > tau(g2)`.
    pub tau_ok: bool,
    pub tau_g: GrowthRateResult,
    pub tau_g2: GrowthRateResult,
}

fn coefficient_table(g: &DyerGraph, m_max: usize) -> Result<GrowthTable> {
    match growth_series(g) {
        Ok(f) => series_coefficients(&f, m_max),
        // Rank above the recursion cap: fall back to direct enumeration.
        Err(Error::Budget(_)) => crate::words::ball(
            g,
            m_max,
            &crate::words::Budgets { states: 50_000_000, closure: 1_000_000 },
        ),
        Err(e) => Err(e),
    }
}

fn validate_witness(g: &DyerGraph, g2: &DyerGraph, phi: &[usize]) -> Result<()> {
    if phi.len() != g.rank() {
        return Err(Error::Domain("witness length differs from the rank".into()));
    }
    let mut used = vec![false; g2.rank()];
    for (v, &t) in phi.iter().enumerate() {
        if t >= g2.rank() || std::mem::replace(&mut used[t], true) {
            return Err(Error::Domain("witness is not an injection".into()));
        }
        if g.vertex_weight(v) > g2.vertex_weight(t) {
            return Err(Error::Domain(format!(
                "witness decreases the weight of vertex {v}"
            )));
        }
    }
    for (u, v, m) in g.edges() {
        let m2 = g2.pair_weight(phi[u], phi[v]);
        if m2 < ExtNat::Fin(3) || m > m2 {
            return Err(Error::Domain(format!(
                "witness does not preserve the edge {{{u},{v}}}"
            )));
        }
    }
    Ok(())
}

/// Verifies `a(m) <= a'(m)` for `m <= m_max` and that the certified rate
/// intervals are consistent with `tau(g) <= tau(g2)`.
pub fn check_monotonicity(
    g: &DyerGraph,
    g2: &DyerGraph,
    phi: Option<Vec<usize>>,
    m_max: usize,
) -> Result<MonotonicityVerdict> {
    let witness = match phi {
        Some(phi) => {
            validate_witness(g, g2, &phi)?;
            phi
        }
        None => find_order_morphism(g, g2).ok_or_else(|| {
            Error::Domain("the graphs are not comparable: no order morphism".into())
        })?,
    };
    let a = coefficient_table(g, m_max)?;
    let a2 = coefficient_table(g2, m_max)?;
    let mut margins = Vec::with_capacity(m_max + 1);
    let mut ok = true;
    for m in 0..=m_max {
        let diff = BigInt::from(a2.a[m].clone()) - BigInt::from(a.a[m].clone());
        if diff.is_negative() {
            ok = false;
        }
        margins.push(diff.to_string());
    }
    let tol = default_tol();
    let tau_g = growth_rate(g, &tol)?;
    let tau_g2 = growth_rate(g2, &tol)?;
    let tau_ok = tau_g.tau_lower <= tau_g2.tau_upper;
    Ok(MonotonicityVerdict {
        witness,
        margins,
        coefficientwise_ok: ok,
        tau_ok,
        tau_g,
        tau_g2,
    })
}

/// One row of a convergence report.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub k: u64,
    pub tau: GrowthRateResult,
    /// Certified upper bound on `|tau_infinity - tau_k|`, as a float string
    /// in CSV output.
    pub gap_upper: String,
    pub gap_approx: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub limit: GrowthRateResult,
}

impl ConvergenceReport {
    /// CSV rows `k,tau_lower,tau_upper,gap` (approximate values, no header).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let (lo, hi) = row.tau.approx();
            out.push_str(&format!("{},{},{},{}\n", row.k, lo, hi, row.gap_approx));
        }
        out
    }
}

/// Computes certified rates along a weight-monotone family and at its limit.
///
/// Fails if the certified intervals prove a decrease of `tau_k` in `k` or
/// prove `tau_k > tau_infinity`; both would contradict monotonicity of the
/// growth rate.  The gap sequence is reported, not asserted, to decrease.
pub fn continuity_experiment(
    family: &GraphFamily,
    ks: &[u64],
    tol: &BigRational,
) -> Result<ConvergenceReport> {
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if ks.is_empty() {
        return Err(Error::Domain("empty parameter list".into()));
    }
    let limit = growth_rate(family.limit(), tol)?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ks.len());
    let mut prev: Option<GrowthRateResult> = None;
    for &k in &ks {
        let g = family.instantiate(k)?;
        let tau = growth_rate(&g, tol)?;
        if let Some(p) = &prev {
            if tau.tau_upper < p.tau_lower {
                return Err(Error::Domain(format!(
                    "certified intervals prove a rate decrease at k = {k}"
                )));
            }
        }
        if tau.tau_lower > limit.tau_upper {
            return Err(Error::Domain(format!(
                "certified intervals prove tau_{k} above the limit rate"
            )));
        }
        let gap = (&limit.tau_upper - &tau.tau_lower).max(BigRational::zero());
        rows.push(ConvergenceRow {
            k,
            gap_approx: gap.to_f64().unwrap_or(f64::NAN),
            gap_upper: gap.to_string(),
            tau: tau.clone(),
        });
        prev = Some(tau);
    }
    Ok(ConvergenceReport { rows, limit })
}
