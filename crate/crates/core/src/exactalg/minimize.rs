use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::interval::RatInterval;
use super::poly::Polynomial;
use super::rational::{Extended, Rational};
use super::ratfunc::RationalFunction;
use super::sturm::{count_real_roots, isolate_real_roots, Domain, IsolatingInterval};
use super::ExactError;

/// Largest integer probed first when searching for sign witnesses.
const INTEGER_PROBES: i64 = 32;
/// Extra halvings of the precision allowed when a finite candidate and the
/// limit at infinity cannot yet be ordered.
const SEPARATION_ROUNDS: usize = 48;

pub fn limit_at_infinity(f: &RationalFunction) -> Extended {
    f.limit_at_infinity()
}

/// Where the infimum on `[0, ∞)` is reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attainment {
    /// `f` is constant.
    Everywhere,
    /// Attained at the point enclosed by the interval.
    At(IsolatingInterval),
    /// Approached as `t → ∞`, never attained.
    AtInfinity,
    /// `f → -∞`.
    Unbounded,
}

impl Attainment {
    pub fn attained(&self) -> bool {
        matches!(self, Attainment::Everywhere | Attainment::At(_))
    }
}

/// Certified enclosure `lower <= inf_{t >= 0} f(t) <= upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfLineMinimum {
    pub lower: Extended,
    pub upper: Extended,
    pub attainment: Attainment,
}

/// Evidence that `f` takes a value below (or at) zero somewhere on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignWitness {
    /// `f(t) = value`.
    At { t: Rational, value: Rational },
    /// `f` vanishes at the (irrational) root isolated by the interval.
    Zero(IsolatingInterval),
}

impl SignWitness {
    /// Rational location of the witness; the interval midpoint for `Zero`.
    pub fn t(&self) -> Rational {
        match self {
            SignWitness::At { t, .. } => t.clone(),
            SignWitness::Zero(iv) => iv.midpoint(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegativeCertificate {
    /// Distinct roots of the numerator on `[0, ∞)`.
    pub numerator_roots: usize,
    /// Sample points, one per root-free gap, all found nonnegative.
    pub gap_samples: Vec<Rational>,
}

fn ensure_no_poles(f: &RationalFunction) -> Result<(), ExactError> {
    if f.denom().is_constant() {
        return Ok(());
    }
    match count_real_roots(f.denom(), &Domain::nonnegative())? {
        0 => Ok(()),
        _ => Err(ExactError::PoleOnDomain),
    }
}

/// One point inside every root-free gap of `p` on `[0, ∞)`, plus the roots.
fn gap_samples(p: &Polynomial) -> Result<(Vec<Rational>, Vec<IsolatingInterval>), ExactError> {
    let roots = isolate_real_roots(p, &Domain::nonnegative())?;
    let mut samples = Vec::new();
    match roots.first() {
        Some(first) if first.is_point() && first.lo.is_zero() => {}
        _ => samples.push(Rational::zero()),
    }
    for w in roots.windows(2) {
        samples.push((&w[0].hi + &w[1].lo) / Rational::from_integer(2.into()));
    }
    if let Some(last) = roots.last() {
        samples.push(&last.hi + Rational::from_integer(1.into()));
    }
    Ok((samples, roots))
}

/// Looks for `t >= 0` with `f(t) < 0` (`strict`) or `f(t) <= 0`.
///
/// Small integers are probed first so witnesses are easy to read; after that
/// one sample per root-free gap of the numerator makes the search exhaustive.
/// `f` must have no poles on `[0, ∞)`.
pub fn find_point_below(
    f: &RationalFunction,
    strict: bool,
) -> Result<Option<SignWitness>, ExactError> {
    ensure_no_poles(f)?;
    if f.is_zero() {
        return Ok((!strict).then(|| SignWitness::At { t: Rational::zero(), value: Rational::zero() }));
    }
    let hit = |v: &Rational| match v.cmp(&Rational::zero()) {
        Ordering::Less => true,
        Ordering::Equal => !strict,
        Ordering::Greater => false,
    };
    let probe_limit = f
        .numer()
        .cauchy_bound()
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap_or(INTEGER_PROBES)
        .clamp(1, INTEGER_PROBES);
    for k in 0..=probe_limit {
        let t = Rational::from_integer(BigInt::from(k));
        let v = f.evaluate(&t)?;
        if hit(&v) {
            return Ok(Some(SignWitness::At { t, value: v }));
        }
    }
    let (samples, roots) = gap_samples(f.numer())?;
    for t in samples {
        let v = f.evaluate(&t)?;
        if hit(&v) {
            return Ok(Some(SignWitness::At { t, value: v }));
        }
    }
    if strict {
        return Ok(None);
    }
    Ok(roots.into_iter().next().map(|iv| {
        if iv.is_point() {
            SignWitness::At { t: iv.lo, value: Rational::zero() }
        } else {
            SignWitness::Zero(iv)
        }
    }))
}

/// Certifies `f(t) >= 0` for all `t >= 0`, or returns a point with `f(t) < 0`.
pub fn halfline_nonnegative(
    f: &RationalFunction,
) -> Result<Result<NonnegativeCertificate, SignWitness>, ExactError> {
    if let Some(w) = find_point_below(f, true)? {
        return Ok(Err(w));
    }
    if f.is_zero() {
        return Ok(Ok(NonnegativeCertificate { numerator_roots: 0, gap_samples: Vec::new() }));
    }
    let (gap_samples, roots) = gap_samples(f.numer())?;
    Ok(Ok(NonnegativeCertificate { numerator_roots: roots.len(), gap_samples }))
}

struct Candidate {
    location: IsolatingInterval,
    enclosure: RatInterval,
}

/// Mean-value enclosure `f(m) + f'(I)·(I - m)` of `f` over `iv`; `None` when
/// the interval is too wide for the derivative's denominator to stay away
/// from zero.
fn enclose(f: &RationalFunction, df: &RationalFunction, iv: &IsolatingInterval) -> Option<RatInterval> {
    if iv.is_point() {
        return Some(RatInterval::point(f.evaluate(&iv.lo).ok()?));
    }
    let m = iv.midpoint();
    let fm = f.evaluate(&m).ok()?;
    let x = RatInterval::new(iv.lo.clone(), iv.hi.clone());
    let slope = RatInterval::eval_poly(df.numer(), &x)
        .checked_div(&RatInterval::eval_poly(df.denom(), &x))?;
    let offset = RatInterval::new(&iv.lo - &m, &iv.hi - &m);
    Some(&RatInterval::point(fm) + &(&slope * &offset))
}

fn refine_candidate(
    f: &RationalFunction,
    df: &RationalFunction,
    crit_sqf: &Polynomial,
    cand: &mut Candidate,
    width: &Rational,
) {
    while &cand.enclosure.width() > width {
        cand.location = cand.location.bisect(crit_sqf);
        if let Some(e) = enclose(f, df, &cand.location) {
            cand.enclosure = e;
        }
    }
}

/// Certified enclosure of `inf_{t >= 0} f(t)` with `upper - lower <= precision`.
///
/// The infimum is the least of `f(0)`, `f` at the positive critical points
/// (roots of the derivative numerator), and the limit at infinity. Each
/// critical point is bracketed by an isolating interval and bisected until
/// its mean-value enclosure is narrow enough. A constant `f` is reported as
/// attained everywhere.
pub fn minimize_on_halfline(
    f: &RationalFunction,
    precision: &Rational,
) -> Result<HalfLineMinimum, ExactError> {
    if precision <= &Rational::zero() {
        return Err(ExactError::NonPositivePrecision);
    }
    ensure_no_poles(f)?;
    if let Some(c) = f.as_constant() {
        return Ok(HalfLineMinimum {
            lower: Extended::Finite(c.clone()),
            upper: Extended::Finite(c),
            attainment: Attainment::Everywhere,
        });
    }
    let limit = f.limit_at_infinity();
    if limit == Extended::NegInfinity {
        return Ok(HalfLineMinimum {
            lower: Extended::NegInfinity,
            upper: Extended::NegInfinity,
            attainment: Attainment::Unbounded,
        });
    }

    let df = f.derivative();
    let crit = f.derivative_numerator();
    let crit_sqf = crit.squarefree_part();
    let mut candidates = Vec::new();
    candidates.push(Candidate {
        location: IsolatingInterval::point(Rational::zero()),
        enclosure: RatInterval::point(f.evaluate(&Rational::zero())?),
    });
    for iv in isolate_real_roots(&crit, &Domain::nonnegative())? {
        if iv.is_point() && iv.lo.is_zero() {
            continue;
        }
        let mut location = iv;
        let enclosure = loop {
            if let Some(e) = enclose(f, &df, &location) {
                break e;
            }
            location = location.bisect(&crit_sqf);
        };
        candidates.push(Candidate { location, enclosure });
    }

    let mut width = precision.clone();
    let mut rounds = 0;
    loop {
        for cand in candidates.iter_mut() {
            refine_candidate(f, &df, &crit_sqf, cand, &width);
        }
        let lower = candidates.iter().map(|c| c.enclosure.lo.clone()).min().expect("f(0)");
        let best = candidates
            .iter()
            .min_by(|a, b| a.enclosure.hi.cmp(&b.enclosure.hi))
            .expect("f(0)");
        let upper = best.enclosure.hi.clone();
        let Extended::Finite(lim) = &limit else {
            return Ok(HalfLineMinimum {
                lower: Extended::Finite(lower),
                upper: Extended::Finite(upper),
                attainment: Attainment::At(best.location.clone()),
            });
        };
        if lim < &lower {
            return Ok(HalfLineMinimum {
                lower: Extended::Finite(lim.clone()),
                upper: Extended::Finite(lim.clone()),
                attainment: Attainment::AtInfinity,
            });
        }
        if lim >= &upper || rounds >= SEPARATION_ROUNDS {
            let upper = if lim < &upper { lim.clone() } else { upper };
            return Ok(HalfLineMinimum {
                lower: Extended::Finite(lower),
                upper: Extended::Finite(upper),
                attainment: Attainment::At(best.location.clone()),
            });
        }
        width /= Rational::from_integer(2.into());
        rounds += 1;
    }
}
