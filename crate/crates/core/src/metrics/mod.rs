//! Space forms and the `(a, b)` family of metrics on their tangent bundles.
//!
//! On `TM` the metric is `scale · g` on horizontal lifts, zero on mixed pairs
//! and `scale · (a(t) g(X,Y) + b(t) g(X,U) g(Y,U))` on vertical lifts, with
//! `t = ½ g(U,U)`. The vertical form has eigenvalue `a(t)` on `U⊥` and
//! `alpha(t) = a(t) + 2t·b(t)` along `U`, so positivity and comparison of two
//! metrics reduce to sign conditions on univariate rational functions.

pub mod expr;

use core::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{
    count_real_roots, find_point_below, halfline_nonnegative, rat, Domain, ExactError,
    NonnegativeCertificate, Polynomial, Rational, RationalFunction, SignWitness,
};

pub use expr::{parse_expr, ParseError, Template};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("unknown metric `{0}` (expected paper, cheeger-gromoll or sasaki)")]
    UnknownMetric(alloc::string::String),
    #[error("space form dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("metric scale must be positive")]
    NonPositiveScale,
}

/// Simply connected model of constant sectional curvature `curvature` and
/// dimension `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceForm {
    n: u32,
    curvature: Rational,
}

impl SpaceForm {
    pub fn new(n: u32, curvature: Rational) -> Result<Self, MetricError> {
        if n < 2 {
            return Err(MetricError::DimensionTooSmall(n));
        }
        Ok(SpaceForm { n, curvature })
    }

    pub fn hyperbolic_plane() -> Self {
        SpaceForm { n: 2, curvature: rat(-1, 1) }
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn curvature(&self) -> &Rational {
        &self.curvature
    }
}

/// Builtin members of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `a = 1/100`, `b = 1 + t`.
    Paper,
    /// `a = b = 1/(1+2t)`.
    CheegerGromoll,
    /// `a = 1`, `b = 0`.
    Sasaki,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Paper, Builtin::CheegerGromoll, Builtin::Sasaki];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Paper => "paper",
            Builtin::CheegerGromoll => "cheeger-gromoll",
            Builtin::Sasaki => "sasaki",
        }
    }
}

impl core::str::FromStr for Builtin {
    type Err = MetricError;
    fn from_str(s: &str) -> Result<Self, MetricError> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| MetricError::UnknownMetric(s.into()))
    }
}

/// The metric `scale · g^{a,b}` on `TM`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GNaturalMetric {
    pub a: RationalFunction,
    pub b: RationalFunction,
    scale: Rational,
}

impl GNaturalMetric {
    pub fn new(a: RationalFunction, b: RationalFunction) -> Self {
        GNaturalMetric { a, b, scale: Rational::one() }
    }

    pub fn builtin(which: Builtin) -> Self {
        let t = RationalFunction::t();
        match which {
            Builtin::Paper => GNaturalMetric::new(
                RationalFunction::constant(rat(1, 100)),
                &RationalFunction::one() + &t,
            ),
            Builtin::CheegerGromoll => {
                let cg = RationalFunction::new(
                    Polynomial::one(),
                    Polynomial::from_coeffs(alloc::vec![rat(1, 1), rat(2, 1)]),
                )
                .expect("nonzero denominator");
                GNaturalMetric::new(cg.clone(), cg)
            }
            Builtin::Sasaki => GNaturalMetric::new(RationalFunction::one(), RationalFunction::zero()),
        }
    }

    /// Looks up `paper`, `cheeger-gromoll` or `sasaki`.
    pub fn by_name(name: &str) -> Result<Self, MetricError> {
        Ok(Self::builtin(name.parse()?))
    }

    pub fn with_scale(mut self, scale: Rational) -> Result<Self, MetricError> {
        if scale <= Rational::zero() {
            return Err(MetricError::NonPositiveScale);
        }
        self.scale = scale;
        Ok(self)
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// Vertical eigenvalue along `U`: `a(t) + 2t·b(t)`.
    pub fn alpha(&self) -> RationalFunction {
        let two_t = RationalFunction::t().scale(&rat(2, 1));
        &self.a + &(&two_t * &self.b)
    }
}

impl fmt::Display for GNaturalMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = {}, b = {}", self.a, self.b)?;
        if !self.scale.is_one() {
            write!(f, ", scale = {}", self.scale)?;
        }
        Ok(())
    }
}

/// Which of the two vertical eigenvalue functions an outcome refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eigenvalue {
    /// `a(t)`, on `U⊥` (multiplicity `n - 1`).
    Perpendicular,
    /// `alpha(t) = a(t) + 2t·b(t)`, along `U`.
    Along,
}

/// Root-count evidence that a rational function is positive on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityEvidence {
    pub numerator_roots: usize,
    pub denominator_roots: usize,
    pub value_at_zero: Rational,
}

impl PositivityEvidence {
    /// Recomputes the root counts and `f(0)` and checks they still certify
    /// positivity of `f`.
    pub fn recheck(&self, f: &RationalFunction) -> bool {
        let d = Domain::nonnegative();
        let num_roots = if f.is_zero() { None } else { count_real_roots(f.numer(), &d).ok() };
        let den_roots = count_real_roots(f.denom(), &d).ok();
        num_roots == Some(self.numerator_roots)
            && den_roots == Some(self.denominator_roots)
            && f.evaluate(&Rational::zero()).ok().as_ref() == Some(&self.value_at_zero)
            && self.numerator_roots == 0
            && self.denominator_roots == 0
            && self.value_at_zero > Rational::zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondegeneracyCertificate {
    pub a_positive: PositivityEvidence,
    pub alpha_positive: PositivityEvidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationKind {
    /// The function is `<= 0` at the witness.
    NonPositive(SignWitness),
    /// The denominator vanishes somewhere on `[0, ∞)`.
    Pole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub eigenvalue: Eigenvalue,
    pub kind: RefutationKind,
}

/// Outcome of [`validate`]: either both eigenvalue functions are certified
/// positive on `[0, ∞)`, or one of them is refuted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid(NondegeneracyCertificate),
    Refuted(Refutation),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid(_))
    }
}

#[allow(clippy::result_large_err)]
fn positivity(f: &RationalFunction, which: Eigenvalue) -> Result<PositivityEvidence, Refutation> {
    let refute = |kind| Refutation { eigenvalue: which, kind };
    let d = Domain::nonnegative();
    let denominator_roots = count_real_roots(f.denom(), &d).expect("denominator is nonzero");
    if denominator_roots > 0 {
        return Err(refute(RefutationKind::Pole));
    }
    let numerator_roots = if f.is_zero() { 0 } else { count_real_roots(f.numer(), &d).unwrap() };
    let value_at_zero = f.evaluate(&Rational::zero()).expect("no pole on the domain");
    if numerator_roots == 0 && value_at_zero > Rational::zero() {
        return Ok(PositivityEvidence { numerator_roots, denominator_roots, value_at_zero });
    }
    let witness = find_point_below(f, false)
        .expect("no pole on the domain")
        .expect("a root or a nonpositive value exists");
    Err(refute(RefutationKind::NonPositive(witness)))
}

/// Certifies positive-definiteness of the vertical block on `[0, ∞)`, or
/// returns a witness `t* >= 0` where `a` or `alpha` fails to be positive.
#[allow(clippy::result_large_err)]
pub fn validate(m: &GNaturalMetric) -> Validation {
    let result = positivity(&m.a, Eigenvalue::Perpendicular).and_then(|a_positive| {
        positivity(&m.alpha(), Eigenvalue::Along)
            .map(|alpha_positive| NondegeneracyCertificate { a_positive, alpha_positive })
    });
    match result {
        Ok(cert) => Validation::Valid(cert),
        Err(r) => Validation::Refuted(r),
    }
}

/// Which inequality of a domination check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Horizontal,
    Vertical(Eigenvalue),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationWitness {
    pub component: Component,
    pub t: Rational,
    /// Eigenvalue of the left metric at `t`, scale included.
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domination {
    pub holds: bool,
    pub witness: Option<DominationWitness>,
    /// Certificates for the vertical inequalities that were proven.
    pub perpendicular: Option<NonnegativeCertificate>,
    pub along: Option<NonnegativeCertificate>,
}

/// Whether `lhs ⪰ rhs` as quadratic forms at every point of `TM`.
///
/// Both forms share the horizontal, `U⊥` and `span(U)` eigenspaces, so this
/// is `scale₁ >= scale₂`, `scale₁·a₁ >= scale₂·a₂` and
/// `scale₁·alpha₁ >= scale₂·alpha₂` on `[0, ∞)`. Both metrics must be valid.
pub fn dominates(lhs: &GNaturalMetric, rhs: &GNaturalMetric) -> Result<Domination, ExactError> {
    if lhs.scale < rhs.scale {
        return Ok(Domination {
            holds: false,
            witness: Some(DominationWitness {
                component: Component::Horizontal,
                t: Rational::zero(),
                lhs: lhs.scale.clone(),
                rhs: rhs.scale.clone(),
            }),
            perpendicular: None,
            along: None,
        });
    }
    let mut certs = [None, None];
    let pairs = [
        (Eigenvalue::Perpendicular, lhs.a.clone(), rhs.a.clone()),
        (Eigenvalue::Along, lhs.alpha(), rhs.alpha()),
    ];
    for (slot, (which, f1, f2)) in certs.iter_mut().zip(pairs) {
        let s1 = f1.scale(&lhs.scale);
        let s2 = f2.scale(&rhs.scale);
        match halfline_nonnegative(&(&s1 - &s2))? {
            Ok(cert) => *slot = Some(cert),
            Err(w) => {
                let t = w.t();
                return Ok(Domination {
                    holds: false,
                    witness: Some(DominationWitness {
                        component: Component::Vertical(which),
                        lhs: s1.evaluate(&t)?,
                        rhs: s2.evaluate(&t)?,
                        t,
                    }),
                    perpendicular: None,
                    along: None,
                });
            }
        }
    }
    let [perpendicular, along] = certs;
    Ok(Domination { holds: true, witness: None, perpendicular, along })
}
