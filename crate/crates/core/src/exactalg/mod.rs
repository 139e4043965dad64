//! Exact univariate algebra over the rationals.
//!
//! Polynomials and rational functions in one variable `t`, Sturm-sequence root
//! counting and isolation, and certified minimization on `[0, ∞)`. No floating
//! point is used anywhere in this module.

mod interval;
mod minimize;
mod poly;
mod ratfunc;
mod rational;
mod sturm;

pub use interval::RatInterval;
pub use minimize::{
    find_point_below, halfline_nonnegative, limit_at_infinity, minimize_on_halfline, Attainment,
    HalfLineMinimum, NonnegativeCertificate, SignWitness,
};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{parse_rational, rat, rat_to_f64, Extended, Rational};
pub use sturm::{count_real_roots, isolate_real_roots, Domain, IsolatingInterval, SturmSequence};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("pole at t = {at}")]
    Pole { at: Rational },
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("denominator vanishes on the domain [0, ∞)")]
    PoleOnDomain,
    #[error("invalid domain: lower end exceeds upper end")]
    EmptyDomain,
    #[error("precision must be positive")]
    NonPositivePrecision,
}
