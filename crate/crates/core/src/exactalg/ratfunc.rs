use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::{Extended, Rational};
use super::ExactError;

/// Quotient of two polynomials in `t`, kept in canonical form:
/// `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
///
/// Two equal rational functions therefore have identical fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc_inv = den.leading_coeff().expect("nonzero").recip();
        Ok(RationalFunction { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    /// The identity function `t`.
    pub fn t() -> Self {
        Polynomial::t().into()
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Constant value if the function does not depend on `t`.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn evaluate(&self, t: &Rational) -> Result<Rational, ExactError> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(ExactError::Pole { at: t.clone() });
        }
        Ok(self.num.eval(t) / d)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.num.eval_f64(t) / self.den.eval_f64(t)
    }

    /// Quotient rule, reduced to canonical form.
    pub fn derivative(&self) -> Self {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(top, self.den.pow(2)).expect("square of nonzero denominator")
    }

    /// Numerator of `f'` over `den²`; its roots are the critical points.
    pub fn derivative_numerator(&self) -> Polynomial {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// Limit as `t → +∞`.
    pub fn limit_at_infinity(&self) -> Extended {
        let (Some(dn), Some(dd)) = (self.num.degree(), self.den.degree()) else {
            return Extended::Finite(Rational::zero());
        };
        let ratio = self.num.leading_coeff().unwrap() / self.den.leading_coeff().unwrap();
        match dn.cmp(&dd) {
            core::cmp::Ordering::Less => Extended::Finite(Rational::zero()),
            core::cmp::Ordering::Equal => Extended::Finite(ratio),
            core::cmp::Ordering::Greater if ratio > Rational::zero() => Extended::PosInfinity,
            core::cmp::Ordering::Greater => Extended::NegInfinity,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        // gcd(num^k, den^k) = 1 and den^k stays monic
        RationalFunction { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Numerator `N` with `self = N / den` for the given denominator, if
    /// `self.den` divides it.
    pub fn numerator_over(&self, den: &Polynomial) -> Option<Polynomial> {
        let factor = den.checked_div_exact(&self.den)?;
        Some(&self.num * &factor)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// Prints in the metric expression grammar: `num` when the denominator is 1,
/// otherwise `num / den`. Since `den` is monic with positive degree it always
/// starts with `t`, so the output re-parses unambiguously.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let terms = |p: &Polynomial| p.coeffs().iter().filter(|c| !c.is_zero()).count();
        if terms(&self.num) > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if terms(&self.den) > 1 {
            write!(f, " / ({})", self.den)
        } else {
            write!(f, " / {}", self.den)
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

/// Panics when dividing by the zero function; see [`RationalFunction::checked_div`].
impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn poly(cs: &[Rational]) -> Polynomial {
        Polynomial::from_coeffs(cs.to_vec())
    }

    /// `1/100 + 2t(1+t)`
    fn paper_alpha() -> Polynomial {
        poly(&[rat(1, 100), rat(2, 1), rat(2, 1)])
    }

    #[test]
    fn quotient_rule_on_paper_m() {
        // M = (1+t)/(1/100 + 2t(1+t)),  M' = (1/100 - 2(1+t)^2) / (1/100 + 2t(1+t))^2
        let m = RationalFunction::new(poly(&[rat(1, 1), rat(1, 1)]), paper_alpha()).unwrap();
        let one_plus_t = poly(&[rat(1, 1), rat(1, 1)]);
        let top = &Polynomial::constant(rat(1, 100)) - &one_plus_t.pow(2).scale(&rat(2, 1));
        let expected = RationalFunction::new(top, paper_alpha().pow(2)).unwrap();
        assert_eq!(m.derivative(), expected);
    }

    #[test]
    fn evaluate_and_pole() {
        let f = RationalFunction::new(poly(&[rat(1, 1), rat(1, 1)]), poly(&[rat(1, 1), rat(-1, 1)]))
            .unwrap();
        assert_eq!(f.evaluate(&rat(1, 1)), Err(ExactError::Pole { at: rat(1, 1) }));
        assert_eq!(f.evaluate(&rat(3, 1)), Ok(rat(-2, 1)));
        assert_eq!(RationalFunction::zero().evaluate(&rat(17, 3)), Ok(rat(0, 1)));
    }

    #[test]
    fn canonical_form_is_monic_and_reduced() {
        let f = RationalFunction::new(
            poly(&[rat(2, 1), rat(2, 1)]),
            poly(&[rat(4, 1), rat(8, 1), rat(4, 1)]),
        )
        .unwrap();
        assert_eq!(f.numer(), &poly(&[rat(1, 2)]));
        assert_eq!(f.denom(), &poly(&[rat(1, 1), rat(1, 1)]));
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn limits() {
        let f = RationalFunction::new(
            poly(&[rat(2, 1), rat(4, 1)]),
            paper_alpha().pow(2),
        )
        .unwrap();
        assert_eq!(f.limit_at_infinity(), Extended::Finite(rat(0, 1)));
        assert_eq!(RationalFunction::constant(rat(7, 1)).limit_at_infinity(), Extended::Finite(rat(7, 1)));
        let g: RationalFunction = poly(&[rat(-2, 1), rat(-1, 1)]).into();
        assert_eq!(g.limit_at_infinity(), Extended::NegInfinity);
        let h = RationalFunction::new(poly(&[rat(0, 1), rat(0, 1), rat(3, 1)]), poly(&[rat(1, 1), rat(-2, 1)])).unwrap();
        assert_eq!(h.limit_at_infinity(), Extended::NegInfinity);
        assert_eq!(
            RationalFunction::new(poly(&[rat(1, 1), rat(3, 1)]), poly(&[rat(5, 1), rat(2, 1)]))
                .unwrap()
                .limit_at_infinity(),
            Extended::Finite(rat(3, 2))
        );
    }

    #[test]
    fn numerator_over_given_denominator() {
        let h = paper_alpha().pow(2);
        let f = RationalFunction::new(poly(&[rat(3, 1)]), h.clone()).unwrap();
        assert_eq!(f.numerator_over(&h), Some(poly(&[rat(3, 1)])));
        assert_eq!(f.numerator_over(&Polynomial::t()), None);
    }
}
