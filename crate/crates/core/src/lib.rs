//! Exact scalar-curvature computations for the two-parameter family of
//! metrics `g^{a,b}` on the tangent bundle of a space form.
//!
//! The crate is `no_std` (it needs `alloc`). Everything in [`exactalg`],
//! [`metrics`] and [`curvature`] is exact rational arithmetic; [`oracle`] is a
//! floating-point tensor-calculus cross-check of the closed form.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod curvature;
pub mod exactalg;
pub mod metrics;
pub mod oracle;

pub use exactalg::{
    count_real_roots, isolate_real_roots, minimize_on_halfline, Domain, ExactError, Extended,
    IsolatingInterval, Polynomial, Rational, RationalFunction,
};
pub use metrics::{dominates, validate, GNaturalMetric, SpaceForm};
pub use curvature::{
    auxiliary_functions, certify_uniform_positivity, f_terms, level_exceedance,
    polynomial_exceeds, scalar_profile, scalar_profile_with, AuxiliaryFunctions, FTerms,
    FormulaVariant, LevelCheck, PositivityCertificate, ScalarProfile, Verdict,
};
pub use oracle::{
    assemble_total_metric, base_christoffels, cross_validate, scalar_curvature_numeric,
    ConformalChart, OracleError, TangentChartPoint, ValidationConfig, ValidationReport,
};
