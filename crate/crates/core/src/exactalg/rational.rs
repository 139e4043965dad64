use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `num / den` as a reduced [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest `f64`; saturates to `±inf` for values outside the float range.
pub fn rat_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.numer().sign() == num_bigint::Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Parses `p`, `p/q`, or a decimal `p.ddd`, with an optional leading sign.
/// Decimals are converted exactly (`0.01` is `1/100`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let value = if let Some((p, q)) = body.split_once('/') {
        let p = parse_digits(p)?;
        let q = parse_digits(q)?;
        if q.is_zero() {
            return None;
        }
        Rational::new(p, q)
    } else if let Some((int, frac)) = body.split_once('.') {
        let int = if int.is_empty() { BigInt::zero() } else { parse_digits(int)? };
        if frac.is_empty() {
            return None;
        }
        let frac_digits = parse_digits(frac)?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        Rational::new(int * &scale + frac_digits, scale)
    } else {
        Rational::from_integer(parse_digits(body)?)
    };
    Some(if neg { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// A rational extended by the two infinities. Variant order gives the natural
/// order `-∞ < finite < +∞`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Extended::NegInfinity => false,
            Extended::Finite(q) => q > &Rational::zero(),
            Extended::PosInfinity => true,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::NegInfinity => f64::NEG_INFINITY,
            Extended::Finite(q) => rat_to_f64(q),
            Extended::PosInfinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInfinity => f.write_str("-inf"),
            Extended::Finite(q) => write!(f, "{q}"),
            Extended::PosInfinity => f.write_str("+inf"),
        }
    }
}

pub(crate) fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

pub(crate) fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) * half()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.01"), Some(rat(1, 100)));
        assert_eq!(parse_rational("1.97"), Some(rat(197, 100)));
        assert_eq!(parse_rational("-3.920197"), Some(rat(-3920197, 1000000)));
        assert_eq!(parse_rational("-1"), Some(rat(-1, 1)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational(".5"), Some(rat(1, 2)));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "-", "1/0", "1.", "abc", "1/-2", "1e5", "--1"] {
            assert_eq!(parse_rational(s), None, "{s}");
        }
    }

    #[test]
    fn extended_order() {
        assert!(Extended::NegInfinity < Extended::Finite(rat(-100, 1)));
        assert!(Extended::Finite(rat(1, 2)) < Extended::Finite(rat(1, 1)));
        assert!(Extended::Finite(rat(10_000, 1)) < Extended::PosInfinity);
    }
}
