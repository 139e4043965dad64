mod common;

use common::suites::{self, brute_force_count, integer_coeffs, poly, product_poly};
use common::config;
use num_traits::Zero;
use proptest::prelude::*;
use psc_core::exactalg::{isolate_real_roots, rat, Domain, Polynomial, Rational, RationalFunction};
use psc_core::{count_real_roots, minimize_on_halfline, Extended};
use std::cmp::Ordering;

#[test]
fn canonical_forms() {
    suites::canonical_forms().unwrap();
}

#[test]
fn sturm_matches_sign_scan() {
    suites::sturm_vs_scan().unwrap();
}

proptest! {
    #![proptest_config(config(64, 0x5eed_0001))]

    #[test]
    fn polynomial_derivative_matches_ratfunc(p in poly(6)) {
        let lifted = RationalFunction::from(p.clone()).derivative();
        prop_assert_eq!(lifted, RationalFunction::from(p.derivative()));
    }

    #[test]
    fn squared_factors_do_not_change_counts(p in product_poly(), j in -4i64..=4) {
        let lin = Polynomial::from_coeffs(vec![rat(-j, 1), rat(1, 1)]);
        let domain = Domain::Interval { lo: rat(-5, 1), hi: rat(5, 1) };
        let base = count_real_roots(&(&p * &lin), &domain).unwrap();
        prop_assert_eq!(count_real_roots(&(&(&p * &lin) * &lin), &domain).unwrap(), base);
    }

    #[test]
    fn isolating_intervals_are_disjoint_sign_changes(p in product_poly(), extra in poly(2)) {
        let p = &p + &extra;
        prop_assume!(!p.is_zero() && !p.is_constant());
        for domain in [Domain::nonnegative(), Domain::Interval { lo: rat(-5, 1), hi: rat(5, 1) }] {
            let ivs = isolate_real_roots(&p, &domain).unwrap();
            prop_assert_eq!(ivs.len(), count_real_roots(&p, &domain).unwrap());
            let sqf = p.squarefree_part();
            for iv in &ivs {
                if iv.is_point() {
                    prop_assert!(p.eval(&iv.lo).is_zero());
                } else {
                    prop_assert!(iv.lo < iv.hi);
                    let (a, b) = (sqf.sign_at(&iv.lo), sqf.sign_at(&iv.hi));
                    prop_assert!(a != Ordering::Equal && b != Ordering::Equal && a != b);
                }
            }
            for w in ivs.windows(2) {
                prop_assert!(w[0].hi < w[1].lo);
            }
        }
    }

    #[test]
    fn minimum_brackets_samples(num in poly(4), den_roots in prop::collection::vec((1i64..=9, 1i64..=4), 0..=2), shift in 1i64..=9) {
        // denominator positive on [0, ∞)
        let mut den = Polynomial::constant(rat(shift, 1));
        for (p, q) in den_roots {
            den = &den * &Polynomial::from_coeffs(vec![rat(p, q), rat(1, 1)]);
        }
        let f = RationalFunction::new(num, den).unwrap();
        let precision = rat(1, 1000);
        let min = minimize_on_halfline(&f, &precision).unwrap();
        let mut sampled: Option<Rational> = None;
        for k in 0..10_000i64 {
            let v = f.evaluate(&rat(k, 100)).unwrap();
            if let Extended::Finite(lo) = &min.lower {
                prop_assert!(lo <= &v, "lower {} above f({}) = {}", lo, k, v);
            }
            sampled = Some(match sampled {
                Some(s) if s <= v => s,
                _ => v,
            });
        }
        // the infimum lies at or below every sample
        let sampled = sampled.unwrap();
        prop_assert!(min.lower <= min.upper);
        if let (Extended::Finite(lo), Extended::Finite(hi)) = (&min.lower, &min.upper) {
            prop_assert!(hi - lo <= precision);
            prop_assert!(hi <= &(&sampled + &precision));
        }
    }
}

#[test]
fn grid_scan_helpers() {
    let cs = [-2i128, 0, 1];
    assert_eq!(brute_force_count(&cs, -2, 4000, 1000), 2);
    // (2t - 1) t : roots hit the grid exactly
    assert_eq!(brute_force_count(&[0, -1, 2], -1, 2000, 1000), 2);
    let p = Polynomial::from_coeffs(vec![rat(-1, 2), rat(3, 4)]);
    assert_eq!(integer_coeffs(&p), vec![-2, 3]);
}
