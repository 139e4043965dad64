use core::cmp::{max, min};
use core::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::Rational;

/// Closed interval with rational endpoints, used for certified enclosures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= Rational::zero() && self.hi >= Rational::zero()
    }

    /// `None` when the divisor contains zero.
    pub fn checked_div(&self, rhs: &RatInterval) -> Option<RatInterval> {
        if rhs.contains_zero() {
            return None;
        }
        let inv = RatInterval { lo: rhs.hi.recip(), hi: rhs.lo.recip() };
        Some(self * &inv)
    }

    /// Horner evaluation of `p` over the interval.
    pub fn eval_poly(p: &Polynomial, x: &RatInterval) -> RatInterval {
        p.coeffs()
            .iter()
            .rev()
            .fold(RatInterval::point(Rational::zero()), |acc, c| {
                &(&acc * x) + &RatInterval::point(c.clone())
            })
    }
}

impl<'a> Add<&'a RatInterval> for &'a RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl<'a> Sub<&'a RatInterval> for &'a RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl<'a> Mul<&'a RatInterval> for &'a RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: &RatInterval) -> RatInterval {
        let p = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = p.iter().fold(p[0].clone(), |m, x| min(m, x.clone()));
        let hi = p.iter().fold(p[0].clone(), |m, x| max(m, x.clone()));
        RatInterval { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use alloc::vec;

    #[test]
    fn horner_encloses_values() {
        let p = Polynomial::from_coeffs(vec![rat(1, 1), rat(-3, 1), rat(1, 1)]);
        let x = RatInterval::new(rat(1, 1), rat(2, 1));
        let e = RatInterval::eval_poly(&p, &x);
        for k in 0..=10 {
            let t = rat(1, 1) + rat(k, 10);
            let v = p.eval(&t);
            assert!(e.lo <= v && v <= e.hi);
        }
    }

    #[test]
    fn division_by_zero_interval() {
        let a = RatInterval::new(rat(1, 1), rat(2, 1));
        assert!(a.checked_div(&RatInterval::new(rat(-1, 1), rat(1, 1))).is_none());
        let q = a.checked_div(&RatInterval::new(rat(2, 1), rat(4, 1))).unwrap();
        assert_eq!(q, RatInterval::new(rat(1, 4), rat(1, 1)));
    }
}
