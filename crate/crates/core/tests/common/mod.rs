#![allow(dead_code)]

pub mod suites;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use psc_core::exactalg::{rat, Polynomial, Rational, RationalFunction};
use psc_core::metrics::Builtin;
use psc_core::{validate, GNaturalMetric};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn poly_from(cs: Vec<Rational>) -> Polynomial {
    Polynomial::from_coeffs(cs)
}

/// `(c0 + c1 t + c2 t^2) / (1 + q t)` with `q >= 0`, so no poles on `[0, ∞)`.
pub fn coefficient_function() -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(small_rational(), 1..=3), nonneg_rational()).prop_map(|(cs, q)| {
        let den = poly_from(vec![rat(1, 1), q]);
        RationalFunction::new(poly_from(cs), den).unwrap()
    })
}

pub fn any_metric() -> impl Strategy<Value = GNaturalMetric> {
    (coefficient_function(), coefficient_function(), positive_rational())
        .prop_map(|(a, b, s)| GNaturalMetric::new(a, b).with_scale(s).unwrap())
}

pub fn builtins() -> Vec<GNaturalMetric> {
    Builtin::ALL.iter().map(|&b| GNaturalMetric::builtin(b)).collect()
}

/// Deterministic valid metrics with polynomial `a`, `b` of degree <= 2.
pub fn random_valid_polynomial_metrics(count: usize, seed: u64) -> Vec<GNaturalMetric> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let mut coeffs = |lo: i64| -> Polynomial {
            let deg = rng.gen_range(0..=2);
            poly_from((0..=deg).map(|_| rat(rng.gen_range(lo..=8), rng.gen_range(1..=4))).collect())
        };
        let a = coeffs(-2);
        let b = coeffs(-4);
        let m = GNaturalMetric::new(a.into(), b.into());
        if validate(&m).is_valid() {
            out.push(m);
        }
    }
    out
}
