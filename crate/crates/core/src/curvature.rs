//! Closed-form scalar curvature of `g^{a,b}` over a space form, and
//! certification of uniform positivity on `[0, ∞)`.
//!
//! With `L = a'/(2a)`, `M = (2b - a')/(2(a + 2tb))`,
//! `N = (a b' - 2a'b)/(2a(a + 2tb))`, `F₂ = L - M(1 + 2tL)` and
//! `F₃ = N - (M' + M² + 2tMN)`, the scalar curvature at `(p, U)` depends only
//! on `t = ½ g(U,U)`:
//!
//! ```text
//! Sc = (n-1) { nC + t·K·C² - (n F₂ + 4t F₃) / a }
//! ```
//!
//! where the coefficient `K` is `2 - 3a` in the published form
//! ([`FormulaVariant::Literature`]). Rescaling the fibres by `√a₀` pulls the
//! Sasaki metric back to the constant metric `(a₀, 0)`, whose scalar
//! curvature is `(n-1)(nC - a₀tC²)`; this fixes `K = -a` for every constant
//! `a₀`, and the tensor-calculus oracle agrees with `K = -a` in general
//! ([`FormulaVariant::Corrected`]). Both forms coincide when `a ≡ 1` or
//! `C = 0`.

use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::exactalg::{
    count_real_roots, find_point_below, minimize_on_halfline, rat, Domain, ExactError, Extended,
    HalfLineMinimum, Polynomial, RatInterval, Rational, RationalFunction, SignWitness,
};
use crate::metrics::{GNaturalMetric, SpaceForm};

/// Which `t·C²` coefficient the closed form uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormulaVariant {
    /// `t(2 - 3a)C²`, as published.
    #[default]
    Literature,
    /// `-t·a·C²`, consistent with fibre rescaling and with the oracle.
    Corrected,
}

impl FormulaVariant {
    pub fn name(self) -> &'static str {
        match self {
            FormulaVariant::Literature => "literature",
            FormulaVariant::Corrected => "corrected",
        }
    }
}

impl core::str::FromStr for FormulaVariant {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "literature" => Ok(FormulaVariant::Literature),
            "corrected" => Ok(FormulaVariant::Corrected),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryFunctions {
    pub l: RationalFunction,
    pub m: RationalFunction,
    pub n: RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTerms {
    pub f2: RationalFunction,
    pub f3: RationalFunction,
}

/// `L`, `M`, `N` of the unscaled metric. Fails only when `a` or `a + 2tb` is
/// identically zero, which a valid metric rules out.
pub fn auxiliary_functions(m: &GNaturalMetric) -> Result<AuxiliaryFunctions, ExactError> {
    let two = RationalFunction::constant(rat(2, 1));
    let (a, b) = (&m.a, &m.b);
    let da = a.derivative();
    let alpha = m.alpha();
    let l = da.checked_div(&(&two * a))?;
    let mm = (&(&two * b) - &da).checked_div(&(&two * &alpha))?;
    let n = (&(a * &b.derivative()) - &(&(&two * &da) * b)).checked_div(&(&(&two * a) * &alpha))?;
    Ok(AuxiliaryFunctions { l, m: mm, n })
}

pub fn f_terms(aux: &AuxiliaryFunctions) -> FTerms {
    let t = RationalFunction::t();
    let two_t = t.scale(&rat(2, 1));
    let f2 = &aux.l - &(&aux.m * &(&RationalFunction::one() + &(&two_t * &aux.l)));
    let inner = &(&aux.m.derivative() + &aux.m.pow(2)) + &(&(&two_t * &aux.m) * &aux.n);
    let f3 = &aux.n - &inner;
    FTerms { f2, f3 }
}

/// Scalar curvature of `m` over `sf` as an exact function of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarProfile {
    pub sc: RationalFunction,
    pub space_form: SpaceForm,
    pub metric: GNaturalMetric,
    pub formula: FormulaVariant,
}

/// [`scalar_profile_with`] using the published formula.
pub fn scalar_profile(m: &GNaturalMetric, sf: &SpaceForm) -> Result<ScalarProfile, ExactError> {
    scalar_profile_with(m, sf, FormulaVariant::Literature)
}

/// Closed-form scalar curvature. The global factor `m.scale()` divides the
/// result, since `Sc(c·G) = Sc(G)/c`.
pub fn scalar_profile_with(
    m: &GNaturalMetric,
    sf: &SpaceForm,
    formula: FormulaVariant,
) -> Result<ScalarProfile, ExactError> {
    let aux = auxiliary_functions(m)?;
    let FTerms { f2, f3 } = f_terms(&aux);
    let n = Rational::from_integer(sf.dim().into());
    let c = sf.curvature();
    let t = RationalFunction::t();
    let k = match formula {
        FormulaVariant::Literature => &RationalFunction::constant(rat(2, 1)) - &m.a.scale(&rat(3, 1)),
        FormulaVariant::Corrected => -&m.a,
    };
    let base = RationalFunction::constant(&n * c);
    let quadratic = (&t * &k).scale(&(c * c));
    let fibre = (&f2.scale(&n) + &(&t.scale(&rat(4, 1)) * &f3)).checked_div(&m.a)?;
    let braces = &(&base + &quadratic) - &fibre;
    let sc = braces.scale(&((n - Rational::one()) / m.scale()));
    Ok(ScalarProfile { sc, space_form: sf.clone(), metric: m.clone(), formula })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `inf Sc > 0`.
    UniformlyPositive,
    /// `Sc > 0` everywhere but `Sc → 0` as `t → ∞`.
    PositiveInfZero,
    NotPositive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::UniformlyPositive => "uniformly-positive",
            Verdict::PositiveInfZero => "positive-but-inf-zero",
            Verdict::NotPositive => "not-positive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateEvidence {
    /// Distinct roots of `num(Sc)` on `[0, ∞)`; `None` for `Sc ≡ 0`.
    pub numerator_roots: Option<usize>,
    pub denominator_roots: usize,
    pub value_at_zero: Rational,
    pub limit: Extended,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub verdict: Verdict,
    /// Enclosure of `C₁ = inf Sc`, present for [`Verdict::UniformlyPositive`].
    pub c1: Option<RatInterval>,
    pub witness: Option<SignWitness>,
    pub evidence: CertificateEvidence,
}

impl PositivityCertificate {
    /// Re-derives the evidence from `p` and checks it supports the verdict.
    pub fn recheck(&self, p: &ScalarProfile) -> bool {
        let Ok(evidence) = gather_evidence(&p.sc) else { return false };
        if evidence != self.evidence {
            return false;
        }
        let strictly_positive =
            evidence.numerator_roots == Some(0) && evidence.value_at_zero > Rational::zero();
        match self.verdict {
            Verdict::UniformlyPositive => {
                let Some(c1) = &self.c1 else { return false };
                strictly_positive
                    && evidence.limit.is_positive()
                    && c1.lo > Rational::zero()
                    && c1.hi <= evidence.value_at_zero
            }
            Verdict::PositiveInfZero => {
                strictly_positive && evidence.limit == Extended::Finite(Rational::zero())
            }
            Verdict::NotPositive => match &self.witness {
                Some(SignWitness::At { t, value }) => {
                    t >= &Rational::zero()
                        && p.sc.evaluate(t).as_ref() == Ok(value)
                        && value <= &Rational::zero()
                }
                Some(SignWitness::Zero(iv)) => {
                    iv.lo >= Rational::zero()
                        && count_real_roots(
                            p.sc.numer(),
                            &Domain::Interval { lo: iv.lo.clone(), hi: iv.hi.clone() },
                        )
                        .is_ok_and(|k| k >= 1)
                }
                None => false,
            },
        }
    }
}

fn gather_evidence(sc: &RationalFunction) -> Result<CertificateEvidence, ExactError> {
    let d = Domain::nonnegative();
    let denominator_roots = count_real_roots(sc.denom(), &d)?;
    if denominator_roots > 0 {
        return Err(ExactError::PoleOnDomain);
    }
    let numerator_roots = if sc.is_zero() { None } else { Some(count_real_roots(sc.numer(), &d)?) };
    Ok(CertificateEvidence {
        numerator_roots,
        denominator_roots,
        value_at_zero: sc.evaluate(&Rational::zero())?,
        limit: sc.limit_at_infinity(),
    })
}

/// Decides whether `inf_{t >= 0} Sc(t) > 0` and, if so, encloses the bound
/// `C₁` to within `precision`. Errors only if `Sc` has a pole on `[0, ∞)`.
pub fn certify_uniform_positivity(
    p: &ScalarProfile,
    precision: &Rational,
) -> Result<PositivityCertificate, ExactError> {
    let evidence = gather_evidence(&p.sc)?;
    let strictly_positive =
        evidence.numerator_roots == Some(0) && evidence.value_at_zero > Rational::zero();
    if !strictly_positive {
        let witness = find_point_below(&p.sc, false)?;
        return Ok(PositivityCertificate { verdict: Verdict::NotPositive, c1: None, witness, evidence });
    }
    if evidence.limit == Extended::Finite(Rational::zero()) {
        return Ok(PositivityCertificate {
            verdict: Verdict::PositiveInfZero,
            c1: None,
            witness: None,
            evidence,
        });
    }
    let two = Rational::from_integer(2.into());
    let mut target = precision.clone();
    loop {
        // half the budget for the enclosure, a quarter per side for rounding
        let HalfLineMinimum { lower, upper, .. } = minimize_on_halfline(&p.sc, &(&target / &two))?;
        let (Extended::Finite(lo), Extended::Finite(hi)) = (lower, upper) else {
            unreachable!("a positive function with positive limit has a finite infimum");
        };
        let grid = decimal_grid(&(&target / &two / &two));
        let lo = (&lo / &grid).floor() * &grid;
        // Sc(0) is itself an upper bound
        let hi = core::cmp::min((&hi / &grid).ceil() * &grid, evidence.value_at_zero.clone());
        if lo > Rational::zero() {
            return Ok(PositivityCertificate {
                verdict: Verdict::UniformlyPositive,
                c1: Some(RatInterval::new(lo, hi)),
                witness: None,
                evidence,
            });
        }
        target /= &two;
    }
}

/// Largest `10^-k` (`k >= 0`) not exceeding `bound`, or `bound` itself if
/// `bound >= 1`.
fn decimal_grid(bound: &Rational) -> Rational {
    let ten = Rational::from_integer(10.into());
    let mut g = Rational::one();
    if bound >= &g {
        return bound.clone();
    }
    while &g > bound {
        g /= &ten;
    }
    g
}

/// Root-count evidence for `p(t) > level` on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCheck {
    pub exceeds: bool,
    /// Distinct roots of `p - level` on `[0, ∞)`; `None` if it is identically zero.
    pub roots: Option<usize>,
    pub value_at_zero: Rational,
    pub sign_at_infinity: Ordering,
}

/// Certifies `p(t) - level > 0` for all `t >= 0`: no roots, positive at 0.
pub fn polynomial_exceeds(p: &Polynomial, level: &Rational) -> LevelCheck {
    let q = p - &Polynomial::constant(level.clone());
    let roots = (!q.is_zero()).then(|| count_real_roots(&q, &Domain::nonnegative()).expect("nonzero"));
    let value_at_zero = q.eval(&Rational::zero());
    LevelCheck {
        exceeds: roots == Some(0) && value_at_zero > Rational::zero(),
        roots,
        value_at_zero,
        sign_at_infinity: q.sign_at_infinity(),
    }
}

/// `Sc(t) > level` on `[0, ∞)`, via `num(Sc) - level·den(Sc) > 0` (the
/// canonical denominator is monic and root-free there, hence positive).
pub fn level_exceedance(p: &ScalarProfile, level: &Rational) -> LevelCheck {
    let shifted = p.sc.numer() - &p.sc.denom().scale(level);
    polynomial_exceeds(&shifted, &Rational::zero())
}
