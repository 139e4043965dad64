mod common;

use common::suites::{self, base_point, chart, fiber_point, within};
use common::*;
use proptest::prelude::*;
use psc_core::exactalg::rat;
use psc_core::metrics::Builtin;
use psc_core::oracle::{
    base_scalar_curvature, curvature_at, scalar_curvature_numeric, scalar_curvature_numeric_with, FdScheme,
    TotalSpaceMetric,
};
use psc_core::{
    assemble_total_metric, cross_validate, scalar_profile_with, FormulaVariant, GNaturalMetric,
    TangentChartPoint, ValidationConfig,
};





proptest! {
    #![proptest_config(config(12, 0x5eed_0004))]

    #[test]
    fn base_chart_has_constant_curvature(n in 2u32..=3, c in -1i64..=1, x in base_point(3)) {
        let ch = chart(n, c);
        let x = &x[..n as usize];
        let s = base_scalar_curvature(&ch, x, FdScheme::default()).unwrap();
        let expected = f64::from(n * (n - 1)) * c as f64;
        prop_assert!(within(expected, s.value, 1e-6, 1e-6), "{} vs {}", s.value, expected);
    }

    #[test]
    fn assembled_metric_is_exactly_symmetric(m in any_metric().prop_filter("valid", |m| psc_core::validate(m).is_valid()), x in base_point(2), u in fiber_point(2)) {
        let g = assemble_total_metric(&chart(2, -1), &m, &TangentChartPoint::new(x, u)).unwrap();
        prop_assert!(g.is_symmetric());
    }

    #[test]
    fn tensor_symmetries(b in prop::sample::select(Builtin::ALL.to_vec()), x in base_point(2), u in fiber_point(2)) {
        let ch = chart(2, -1);
        let field = TotalSpaceMetric::new(&ch, &GNaturalMetric::builtin(b));
        let mut p = x;
        p.extend(u);
        let geo = curvature_at(&field, &p, FdScheme::default()).unwrap();
        let d = geo.dim;
        let scale = geo.riemann.iter().fold(1.0f64, |acc, r| acc.max(r.abs()));
        for m in 0..d {
            for i in 0..d {
                for j in 0..d {
                    prop_assert!((geo.gamma(m, i, j) - geo.gamma(m, j, i)).abs() <= 1e-9);
                }
            }
        }
        for a in 0..d {
            for bb in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let r = geo.riemann_lower(a, bb, c, e);
                        prop_assert!((r + geo.riemann_lower(bb, a, c, e)).abs() <= 1e-6 * scale);
                        prop_assert!((r + geo.riemann_lower(a, bb, e, c)).abs() <= 1e-6 * scale);
                        prop_assert!((r - geo.riemann_lower(c, e, a, bb)).abs() <= 1e-5 * scale);
                    }
                }
            }
        }
    }

}

#[test]
fn oracle_depends_on_t_only() {
    suites::t_only_dependence().unwrap();
}

#[test]
fn second_order_convergence_without_extrapolation() {
    suites::fd_convergence().unwrap();
}

#[test]
fn flat_sasaki_total_space_is_flat() {
    let ch = chart(2, 0);
    let m = GNaturalMetric::builtin(Builtin::Sasaki);
    for (x, u) in [([0.1, -0.2], [1.0, 2.0]), ([0.0, 0.3], [-2.5, 0.5])] {
        let s = scalar_curvature_numeric(&ch, &m, &TangentChartPoint::new(x.to_vec(), u.to_vec()), 1e-3).unwrap();
        assert!(s.value.abs() <= 1e-6, "{}", s.value);
    }
}

#[test]
fn global_scale_law() {
    let ch = chart(2, -1);
    let tol = 1e-4;
    for b in Builtin::ALL {
        let m = GNaturalMetric::builtin(b);
        let pt = TangentChartPoint::new(vec![0.12, -0.05], vec![0.7, -0.4]);
        let base = scalar_curvature_numeric(&ch, &m, &pt, 1e-3).unwrap().value;
        for (p, q) in [(1, 4), (100, 1)] {
            let c = rat(p, q);
            let scaled_metric = m.clone().with_scale(c.clone()).unwrap();
            let scaled = scalar_curvature_numeric(&ch, &scaled_metric, &pt, 1e-3).unwrap().value;
            let expected = base * q as f64 / p as f64;
            assert!(within(expected, scaled, 10.0 * tol, 10.0 * 1e-6), "{} c={c}: {scaled} vs {expected}", b.name());
        }
    }
}

#[test]
fn richardson_improves_on_plain_differences() {
    let ch = chart(2, -1);
    let m = GNaturalMetric::builtin(Builtin::CheegerGromoll);
    let pt = TangentChartPoint::new(vec![0.1, 0.1], vec![0.5, 1.0]);
    let exact = scalar_profile_with(&m, ch.space_form(), FormulaVariant::Corrected).unwrap().sc.eval_f64(pt.t(&ch));
    let plain = scalar_curvature_numeric_with(&ch, &m, &pt, FdScheme { step: 1e-3, richardson: false }).unwrap();
    let rich = scalar_curvature_numeric_with(&ch, &m, &pt, FdScheme { step: 1e-3, richardson: true }).unwrap();
    assert!((rich.value - exact).abs() < (plain.value - exact).abs());
}

#[test]
fn corrected_formula_agrees_with_oracle() {
    let cases = [
        (Builtin::Paper, 2, -1),
        (Builtin::CheegerGromoll, 2, 1),
        (Builtin::CheegerGromoll, 3, -1),
        (Builtin::Sasaki, 3, 1),
    ];
    for (b, n, c) in cases {
        let config = ValidationConfig { samples: 8, formula: FormulaVariant::Corrected, ..Default::default() };
        let report = cross_validate(&chart(n, c), &GNaturalMetric::builtin(b), &config).unwrap();
        assert!(report.pass, "{} n={n} C={c}: rel {:e} abs {:e}", b.name(), report.max_rel_err, report.max_abs_err);
    }
    for (i, m) in random_valid_polynomial_metrics(6, 23).iter().enumerate() {
        let c = [-1, 0, 1][i % 3];
        let config = ValidationConfig { samples: 4, seed: i as u64, formula: FormulaVariant::Corrected, ..Default::default() };
        let report = cross_validate(&chart(2, c), m, &config).unwrap();
        assert!(report.pass, "{m} C={c}: rel {:e} abs {:e}", report.max_rel_err, report.max_abs_err);
    }
}

#[test]
fn cross_validation_is_deterministic() {
    let ch = chart(2, -1);
    let m = GNaturalMetric::builtin(Builtin::Paper);
    let config = ValidationConfig { samples: 3, ..Default::default() };
    assert_eq!(cross_validate(&ch, &m, &config).unwrap(), cross_validate(&ch, &m, &config).unwrap());
}
