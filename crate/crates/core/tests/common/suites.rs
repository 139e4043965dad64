//! Property suites shared by the regular test targets and the acceptance run.

use super::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::test_runner::TestRunner;
use psc_core::exactalg::{Domain, Polynomial, Rational, RationalFunction};
use psc_core::metrics::{Builtin, Component, Eigenvalue};
use psc_core::oracle::{base_scalar_curvature, FdScheme};
use psc_core::{
    count_real_roots, dominates, scalar_curvature_numeric, validate, ConformalChart, SpaceForm,
    TangentChartPoint,
};
use std::cmp::Ordering;

pub type SuiteResult = Result<(), String>;

fn run<S: Strategy>(
    cases: u32,
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> SuiteResult {
    let mut runner = TestRunner::new(config(cases, seed));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..=max_degree + 1)
        .prop_map(|cs| Polynomial::from_coeffs(cs.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

pub fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(3), nonzero_poly(3)).prop_map(|(p, q)| RationalFunction::new(p, q).unwrap())
}

/// `p/q` and `p·r/(q·r)` canonicalize identically; differentiation is linear.
pub fn canonical_forms() -> SuiteResult {
    run(64, 0x5eed_0101, (poly(3), nonzero_poly(3), nonzero_poly(2)), |(p, q, r)| {
        let direct = RationalFunction::new(p.clone(), q.clone()).unwrap();
        let padded = RationalFunction::new(&p * &r, &q * &r).unwrap();
        prop_assert_eq!(direct.numer(), padded.numer());
        prop_assert_eq!(direct.denom(), padded.denom());
        prop_assert_eq!(direct.denom().leading_coeff(), Some(&Rational::one()));
        Ok(())
    })?;
    run(64, 0x5eed_0102, (ratfunc(), ratfunc(), (-9i64..=9, 1i64..=5)), |(f, g, (p, q))| {
        let c = RationalFunction::constant(rat(p, q));
        prop_assert_eq!((&f + &g).derivative(), &f.derivative() + &g.derivative());
        prop_assert_eq!((&c * &f).derivative(), &c * &f.derivative());
        Ok(())
    })
}

/// Factors with integer coefficients whose roots are far apart relative to
/// the scanning grid.
#[derive(Debug, Clone)]
enum Factor {
    Integer(i64),
    Half(i64),
    Surd(i64),
    Positive(i64),
}

impl Factor {
    fn degree(&self) -> usize {
        match self {
            Factor::Integer(_) | Factor::Half(_) => 1,
            Factor::Surd(_) | Factor::Positive(_) => 2,
        }
    }

    fn poly(&self) -> Polynomial {
        let cs: Vec<i64> = match *self {
            Factor::Integer(j) => vec![-j, 1],
            Factor::Half(j) => vec![-(2 * j + 1), 2],
            Factor::Surd(q) => vec![-q, 0, 1],
            Factor::Positive(q) => vec![q, 0, 1],
        };
        Polynomial::from_coeffs(cs.into_iter().map(|c| rat(c, 1)).collect())
    }
}

fn factor() -> impl Strategy<Value = Factor> {
    let surds = vec![2i64, 3, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15, 17, 18, 19, 20, 21, 22, 23];
    prop_oneof![
        (-4i64..=4).prop_map(Factor::Integer),
        (-5i64..=4).prop_map(Factor::Half),
        prop::sample::select(surds).prop_map(Factor::Surd),
        (1i64..=9).prop_map(Factor::Positive),
    ]
}

/// Random polynomials of degree 1..=6 built from [`Factor`]s, possibly with
/// repeated factors.
pub fn product_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(factor(), 1..=5)
        .prop_map(|fs| {
            let mut deg = 0;
            let mut p = Polynomial::one();
            for f in fs {
                if deg + f.degree() <= 6 {
                    deg += f.degree();
                    p = &p * &f.poly();
                }
            }
            p
        })
        .prop_filter("nonconstant", |p| !p.is_constant())
}

/// Integer coefficients of a positive multiple of `p`.
pub fn integer_coeffs(p: &Polynomial) -> Vec<i128> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| i128::try_from(c.numer() * (&lcm / c.denom())).expect("coefficient fits"))
        .collect()
}

/// Roots of `cs` found by scanning the points `lo + k/d`, `k = 0..=steps`:
/// exact zeros plus sign changes between consecutive nonzero values.
pub fn brute_force_count(cs: &[i128], lo: i128, steps: i128, d: i128) -> usize {
    let deg = cs.len() as u32 - 1;
    // p(i/d)·d^deg = Σ c_k i^k d^(deg-k)
    let homog: Vec<i128> = cs.iter().enumerate().map(|(k, c)| c * d.pow(deg - k as u32)).collect();
    let mut count = 0;
    let mut last = Ordering::Equal;
    for k in 0..=steps {
        let i = lo * d + k;
        let value = homog
            .iter()
            .rev()
            .fold(0i128, |acc, c| acc.checked_mul(i).and_then(|v| v.checked_add(*c)).expect("no overflow"));
        match value.cmp(&0) {
            Ordering::Equal => {
                count += 1;
                last = Ordering::Equal;
            }
            s => {
                if last != Ordering::Equal && s != last {
                    count += 1;
                }
                last = s;
            }
        }
    }
    count
}

/// Sturm counts on `[-5, 5]` against a scan of `10^5` grid steps.
pub fn sturm_vs_scan() -> SuiteResult {
    run(64, 0x5eed_0103, product_poly(), |p| {
        let sqf = p.squarefree_part();
        let scanned = brute_force_count(&integer_coeffs(&sqf), -5, 100_000, 10_000);
        let domain = Domain::Interval { lo: rat(-5, 1), hi: rat(5, 1) };
        prop_assert_eq!(count_real_roots(&p, &domain).unwrap(), scanned);
        prop_assert_eq!(count_real_roots(&sqf, &domain).unwrap(), scanned);
        Ok(())
    })
}

/// Vertical quadratic form `scale·(a|v_perp|^2 + alpha|v_U|^2)` at `t`.
pub fn vertical_form(m: &GNaturalMetric, t: &Rational, perp_sq: &Rational, along_sq: &Rational) -> Rational {
    let a = m.a.evaluate(t).unwrap();
    let alpha = m.alpha().evaluate(t).unwrap();
    m.scale() * (a * perp_sq + alpha * along_sq)
}

pub fn valid_metric() -> impl Strategy<Value = GNaturalMetric> {
    any_metric().prop_filter("valid", |m| validate(m).is_valid())
}

/// `rhs` plus nonnegative perturbations of `a` and `b` and a larger scale.
pub fn dominating_pair() -> impl Strategy<Value = (GNaturalMetric, GNaturalMetric)> {
    let bumps = (prop::collection::vec(nonneg_rational(), 1..=3), prop::collection::vec(nonneg_rational(), 1..=2));
    (valid_metric(), bumps, nonneg_rational()).prop_map(|(rhs, (da, db), ds)| {
        let a = &rhs.a + &RationalFunction::from(poly_from(da));
        let b = &rhs.b + &RationalFunction::from(poly_from(db));
        let scale = rhs.scale() + ds;
        (GNaturalMetric::new(a, b).with_scale(scale).unwrap(), rhs)
    })
}

/// `10^3` samples of `(t, |v_perp|^2, |v_U|^2)` with `t` in `[0, 50]`.
fn vertical_vectors() -> impl Strategy<Value = Vec<(Rational, Rational, Rational)>> {
    prop::collection::vec((0i64..=1000, nonneg_rational(), nonneg_rational()), 1000)
        .prop_map(|v| v.into_iter().map(|(t, p, q)| (rat(t, 20), p, q)).collect())
}

/// A positive domination verdict holds at random vertical vectors; a negative
/// one carries a witness that evaluates as reported.
pub fn domination_vs_sampling() -> SuiteResult {
    let pairs = prop_oneof![dominating_pair(), (valid_metric(), valid_metric())];
    run(24, 0x5eed_0104, (pairs, vertical_vectors()), |((lhs, rhs), samples)| {
        let d = dominates(&lhs, &rhs).unwrap();
        if d.holds {
            prop_assert!(lhs.scale() >= rhs.scale());
            for (t, p, q) in &samples {
                prop_assert!(vertical_form(&lhs, t, p, q) >= vertical_form(&rhs, t, p, q));
            }
            return Ok(());
        }
        let w = d.witness.unwrap();
        prop_assert!(w.t >= Rational::from_integer(0.into()));
        prop_assert!(w.lhs < w.rhs);
        let (one, zero) = (rat(1, 1), rat(0, 1));
        match w.component {
            Component::Horizontal => prop_assert!(lhs.scale() < rhs.scale()),
            Component::Vertical(which) => {
                let (p, q) = match which {
                    Eigenvalue::Perpendicular => (one, zero),
                    Eigenvalue::Along => (zero, one),
                };
                prop_assert_eq!(vertical_form(&lhs, &w.t, &p, &q), w.lhs);
                prop_assert_eq!(vertical_form(&rhs, &w.t, &p, &q), w.rhs);
            }
        }
        Ok(())
    })
}

pub fn within(closed: f64, numeric: f64, rel: f64, abs: f64) -> bool {
    let diff = (closed - numeric).abs();
    if closed.abs() >= 1.0 {
        diff <= rel * closed.abs()
    } else {
        diff <= abs
    }
}

pub fn chart(n: u32, c: i64) -> ConformalChart {
    ConformalChart::new(&SpaceForm::new(n, rat(c, 1)).unwrap())
}

/// Points of `|x| <= 0.2·√n`, well inside the default chart.
pub fn base_point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.2f64..0.2, n)
}

pub fn fiber_point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.5f64..1.5, n)
}

/// Oracle values agree at two points of the hyperbolic plane with equal `t`.
pub fn t_only_dependence() -> SuiteResult {
    let strategy = (
        prop::sample::select(Builtin::ALL.to_vec()),
        base_point(2),
        base_point(2),
        fiber_point(2),
        0.0f64..std::f64::consts::TAU,
    );
    run(12, 0x5eed_0105, strategy, |(b, x1, x2, u, turn)| {
        let ch = chart(2, -1);
        let m = GNaturalMetric::builtin(b);
        let p1 = TangentChartPoint::new(x1, u.clone());
        let t = p1.t(&ch);
        // rotate u and rescale it so the second point has the same t
        let (s, c) = turn.sin_cos();
        let r = (ch.lambda(&p1.x) / ch.lambda(&x2)).sqrt();
        let p2 = TangentChartPoint::new(x2, vec![r * (c * u[0] - s * u[1]), r * (s * u[0] + c * u[1])]);
        prop_assert!((p2.t(&ch) - t).abs() <= 1e-12 * t.max(1.0));
        let v1 = scalar_curvature_numeric(&ch, &m, &p1, 1e-3).unwrap().value;
        let v2 = scalar_curvature_numeric(&ch, &m, &p2, 1e-3).unwrap().value;
        prop_assert!(within(v1, v2, 2e-4, 2e-6), "{} vs {} at t = {}", v1, v2, t);
        Ok(())
    })
}

/// Without extrapolation, halving the step cuts the base self-test error by
/// at least 3.
pub fn fd_convergence() -> SuiteResult {
    let strategy = (2u32..=3, prop::sample::select(vec![-1i64, 1]), base_point(3));
    run(12, 0x5eed_0106, strategy, |(n, c, x)| {
        let ch = chart(n, c);
        let x = &x[..n as usize];
        let expected = f64::from(n * (n - 1)) * c as f64;
        let err = |h| {
            let s = base_scalar_curvature(&ch, x, FdScheme { step: h, richardson: false }).unwrap();
            (s.value - expected).abs()
        };
        let (coarse, fine) = (err(2e-2), err(1e-2));
        prop_assert!(coarse >= 3.0 * fine, "coarse {:e}, fine {:e}", coarse, fine);
        Ok(())
    })
}
