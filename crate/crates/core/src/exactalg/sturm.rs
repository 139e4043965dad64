use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::{midpoint, Rational};
use super::ExactError;

/// Closed interval `[lo, hi]` of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    HalfLine { lo: Rational },
    Interval { lo: Rational, hi: Rational },
}

impl Domain {
    /// `[0, ∞)`.
    pub fn nonnegative() -> Self {
        Domain::HalfLine { lo: Rational::zero() }
    }

    fn lo(&self) -> &Rational {
        match self {
            Domain::HalfLine { lo } | Domain::Interval { lo, .. } => lo,
        }
    }

    /// Finite interval containing every root of `sqf` in the domain.
    fn bounded(&self, sqf: &Polynomial) -> Result<(Rational, Rational), ExactError> {
        match self {
            Domain::Interval { lo, hi } if lo > hi => Err(ExactError::EmptyDomain),
            Domain::Interval { lo, hi } => Ok((lo.clone(), hi.clone())),
            Domain::HalfLine { lo } => {
                let b = sqf.cauchy_bound();
                let hi = if &b > lo { b } else { lo.clone() };
                Ok((lo.clone(), hi))
            }
        }
    }
}

/// Closed interval holding exactly one distinct real root of a polynomial.
///
/// Unless `lo == hi` (an exact rational root), the squarefree part has
/// strictly opposite signs at the two endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn point(t: Rational) -> Self {
        IsolatingInterval { lo: t.clone(), hi: t }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        midpoint(&self.lo, &self.hi)
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    /// One bisection step against the squarefree polynomial `sqf`.
    pub fn bisect(&self, sqf: &Polynomial) -> Self {
        if self.is_point() {
            return self.clone();
        }
        let mid = self.midpoint();
        let sm = sqf.sign_at(&mid);
        if sm == Ordering::Equal {
            return Self::point(mid);
        }
        if sm == sqf.sign_at(&self.lo) {
            IsolatingInterval { lo: mid, hi: self.hi.clone() }
        } else {
            IsolatingInterval { lo: self.lo.clone(), hi: mid }
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&self, sqf: &Polynomial, width: &Rational) -> Self {
        let mut iv = self.clone();
        while &iv.width() > width {
            iv = iv.bisect(sqf);
        }
        iv
    }

    /// Shrinks the interval until `hi` moves strictly below its current value.
    fn pull_hi(&mut self, sqf: &Polynomial) {
        let s_lo = sqf.sign_at(&self.lo);
        loop {
            let mid = self.midpoint();
            match sqf.sign_at(&mid) {
                Ordering::Equal => {
                    *self = Self::point(mid);
                    return;
                }
                s if s != s_lo => {
                    self.hi = mid;
                    return;
                }
                _ => self.lo = mid,
            }
        }
    }
}

/// Sturm sequence of the squarefree part of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<Polynomial>,
}

impl SturmSequence {
    pub fn new(p: &Polynomial) -> Result<Self, ExactError> {
        if p.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let sqf = p.squarefree_part();
        let mut chain = Vec::new();
        let mut prev = sqf.clone();
        let mut cur = sqf.derivative();
        chain.push(sqf);
        while !cur.is_zero() {
            let (_, r) = prev.div_rem(&cur);
            let next = -&r;
            // positive rescaling keeps signs and bounds coefficient growth
            let next = match next.leading_coeff() {
                Some(lc) => next.scale(&num_traits::Signed::abs(&lc.recip())),
                None => next,
            };
            chain.push(cur.clone());
            prev = cur;
            cur = next;
        }
        Ok(SturmSequence { chain })
    }

    pub fn squarefree(&self) -> &Polynomial {
        &self.chain[0]
    }

    /// Sign variations of the chain at `t`, zeros skipped.
    pub fn variations_at(&self, t: &Rational) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at(t)))
    }

    pub fn variations_at_infinity(&self) -> usize {
        count_variations(self.chain.iter().map(Polynomial::sign_at_infinity))
    }

    /// Distinct roots in the closed interval `[lo, hi]`, `lo <= hi`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        let at_lo = usize::from(self.squarefree().sign_at(lo) == Ordering::Equal);
        self.variations_at(lo) - self.variations_at(hi) + at_lo
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots of `p` in the domain. Multiplicity is not
/// counted: `(t-1)^2` has one root.
pub fn count_real_roots(p: &Polynomial, domain: &Domain) -> Result<usize, ExactError> {
    let seq = SturmSequence::new(p)?;
    match domain {
        Domain::HalfLine { lo } => {
            let at_lo = usize::from(seq.squarefree().sign_at(lo) == Ordering::Equal);
            Ok(seq.variations_at(lo) - seq.variations_at_infinity() + at_lo)
        }
        Domain::Interval { lo, hi } if lo > hi => Err(ExactError::EmptyDomain),
        Domain::Interval { lo, hi } => Ok(seq.count_in(lo, hi)),
    }
}

/// Sorted, pairwise-disjoint isolating intervals, one per distinct real root
/// of `p` in the domain.
pub fn isolate_real_roots(
    p: &Polynomial,
    domain: &Domain,
) -> Result<Vec<IsolatingInterval>, ExactError> {
    let seq = SturmSequence::new(p)?;
    let sqf = seq.squarefree();
    let (lo, hi) = domain.bounded(sqf)?;
    let mut out = Vec::new();
    if sqf.sign_at(domain.lo()) == Ordering::Equal {
        out.push(IsolatingInterval::point(lo.clone()));
    }
    if lo < hi {
        let (vl, vh) = (seq.variations_at(&lo), seq.variations_at(&hi));
        split(&seq, lo, hi, vl, vh, &mut out);
    }
    // adjacent cells may share an endpoint that is not a root
    for i in 1..out.len() {
        if !out[i - 1].is_point() && out[i - 1].hi == out[i].lo {
            out[i - 1].pull_hi(sqf);
        }
    }
    Ok(out)
}

/// Roots in the half-open cell `(a, b]`, with `va`, `vb` the variation counts.
fn split(
    seq: &SturmSequence,
    a: Rational,
    b: Rational,
    va: usize,
    vb: usize,
    out: &mut Vec<IsolatingInterval>,
) {
    let count = va - vb;
    if count == 0 {
        return;
    }
    let sqf = seq.squarefree();
    if count == 1 {
        if sqf.sign_at(&b) == Ordering::Equal {
            out.push(IsolatingInterval::point(b));
            return;
        }
        if sqf.sign_at(&a) != Ordering::Equal {
            out.push(IsolatingInterval { lo: a, hi: b });
            return;
        }
    }
    let m = midpoint(&a, &b);
    let vm = seq.variations_at(&m);
    split(seq, a, m.clone(), va, vm, out);
    split(seq, m, b, vm, vb, out);
}
