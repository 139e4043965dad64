//! Floating-point cross-check of the closed-form scalar curvature.
//!
//! The base space form is realized on a conformal chart `λ(x)·I` with
//! `λ = 4/(1 + C|x|²)²` (Poincaré ball for `C < 0`, stereographic sphere
//! for `C > 0`). The full `2n × 2n` metric of `g^{a,b}` is assembled in the
//! induced coordinates `(x, u)` of `TM` and its scalar curvature is computed
//! by finite-difference tensor calculus, independently of [`crate::curvature`].

mod linalg;
mod tensor;

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::curvature::{scalar_profile_with, FormulaVariant};
use crate::exactalg::{rat_to_f64, ExactError, RationalFunction};
use crate::metrics::{GNaturalMetric, SpaceForm};

pub use linalg::Matrix;
pub use tensor::{christoffel_at, curvature_at, FdScheme, Geometry, MetricField};

/// Condition number above which results are flagged as unreliable.
pub const ILL_CONDITIONED: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("point lies outside the chart domain |x| <= {radius}")]
    OutOfDomain { radius: f64 },
    #[error("step {step} too large: need |x| + 4*step <= {radius}")]
    StepTooLarge { step: f64, radius: f64 },
    #[error("step must be positive and finite")]
    InvalidStep,
    #[error("chart radius {radius} reaches the singular locus of the chart")]
    InvalidRadius { radius: f64 },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("metric matrix is singular")]
    SingularMetric,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Conformal chart `λ(x)·I` of the space form on the ball `|x| <= radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalChart {
    space_form: SpaceForm,
    curvature: f64,
    radius: f64,
}

impl ConformalChart {
    /// Radius `0.5` (scaled to `0.5/√|C|` when `|C| > 1`).
    pub fn new(space_form: &SpaceForm) -> Self {
        let c = rat_to_f64(space_form.curvature());
        let radius = if c.abs() > 1.0 { 0.5 / libm::sqrt(c.abs()) } else { 0.5 };
        ConformalChart { space_form: space_form.clone(), curvature: c, radius }
    }

    /// For `C < 0` the ball must satisfy `|C|·radius² <= 1/4`, keeping
    /// `1 + C|x|² >= 3/4` away from the boundary at infinity.
    pub fn with_radius(space_form: &SpaceForm, radius: f64) -> Result<Self, OracleError> {
        let c = rat_to_f64(space_form.curvature());
        if !(radius > 0.0 && radius.is_finite()) || (c < 0.0 && -c * radius * radius > 0.25) {
            return Err(OracleError::InvalidRadius { radius });
        }
        Ok(ConformalChart { space_form: space_form.clone(), curvature: c, radius })
    }

    pub fn space_form(&self) -> &SpaceForm {
        &self.space_form
    }

    pub fn dim(&self) -> usize {
        self.space_form.dim() as usize
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn lambda(&self, x: &[f64]) -> f64 {
        let s = 1.0 + self.curvature * norm_sq(x);
        4.0 / (s * s)
    }

    /// `∂_i φ` for `φ = ½ log λ`.
    pub fn dphi(&self, x: &[f64]) -> Vec<f64> {
        let s = 1.0 + self.curvature * norm_sq(x);
        x.iter().map(|xi| -2.0 * self.curvature * xi / s).collect()
    }

    fn christoffels_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let n = x.len();
        let dphi = self.dphi(x);
        let mut gamma = vec![0.0; n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut v = 0.0;
                    if k == i {
                        v += dphi[j];
                    }
                    if k == j {
                        v += dphi[i];
                    }
                    if i == j {
                        v -= dphi[k];
                    }
                    gamma[(k * n + i) * n + j] = v;
                }
            }
        }
        gamma
    }

    fn check_point(&self, x: &[f64]) -> Result<(), OracleError> {
        if x.len() != self.dim() {
            return Err(OracleError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        if norm_sq(x) > self.radius * self.radius {
            return Err(OracleError::OutOfDomain { radius: self.radius });
        }
        Ok(())
    }

    /// Requires the closed ball of radius `4·step` around `x` in the domain.
    fn check_margin(&self, x: &[f64], step: f64) -> Result<(), OracleError> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(OracleError::InvalidStep);
        }
        self.check_point(x)?;
        let reach = self.radius - 4.0 * step;
        if reach < 0.0 || norm_sq(x) > reach * reach {
            return Err(OracleError::StepTooLarge { step, radius: self.radius });
        }
        Ok(())
    }
}

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Levi-Civita symbols of the chart metric,
/// `Γ^k_ij = δ^k_i ∂_jφ + δ^k_j ∂_iφ - δ_ij ∂_kφ`, laid out `[k][i][j]`.
pub fn base_christoffels(chart: &ConformalChart, x: &[f64]) -> Result<Vec<f64>, OracleError> {
    chart.check_point(x)?;
    Ok(chart.christoffels_unchecked(x))
}

/// A point `(x, u)` of `TM` in induced coordinates, `U = u^i ∂_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentChartPoint {
    pub x: Vec<f64>,
    pub u: Vec<f64>,
}

impl TangentChartPoint {
    pub fn new(x: Vec<f64>, u: Vec<f64>) -> Self {
        TangentChartPoint { x, u }
    }

    /// `t = ½ λ(x) |u|²`.
    pub fn t(&self, chart: &ConformalChart) -> f64 {
        0.5 * chart.lambda(&self.x) * norm_sq(&self.u)
    }

    fn coords(&self) -> Vec<f64> {
        let mut p = self.x.clone();
        p.extend_from_slice(&self.u);
        p
    }
}

#[derive(Debug, Clone)]
struct FloatRational {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl FloatRational {
    fn new(f: &RationalFunction) -> Self {
        let conv = |p: &crate::exactalg::Polynomial| p.coeffs().iter().map(rat_to_f64).collect();
        FloatRational { num: conv(f.numer()), den: conv(f.denom()) }
    }

    fn eval(&self, t: f64) -> f64 {
        let horner = |c: &[f64]| c.iter().rev().fold(0.0, |acc, x| acc * t + x);
        horner(&self.num) / horner(&self.den)
    }
}

/// The metric `scale·g^{a,b}` on `TM` as a matrix field over `(x, u)`.
#[derive(Debug, Clone)]
pub struct TotalSpaceMetric {
    chart: ConformalChart,
    a: FloatRational,
    b: FloatRational,
    scale: f64,
}

impl TotalSpaceMetric {
    pub fn new(chart: &ConformalChart, m: &GNaturalMetric) -> Self {
        TotalSpaceMetric {
            chart: chart.clone(),
            a: FloatRational::new(&m.a),
            b: FloatRational::new(&m.b),
            scale: rat_to_f64(m.scale()),
        }
    }
}

impl MetricField for TotalSpaceMetric {
    fn dim(&self) -> usize {
        2 * self.chart.dim()
    }

    /// Adapted-frame blocks `scale·g` (horizontal) and
    /// `scale·(a g + b (gu)(gu)ᵀ)` (vertical), written in the coordinate
    /// frame through the coframe `θ^k = du^k + Γ^k_ij u^j dx^i`.
    fn metric_at(&self, p: &[f64]) -> Matrix {
        let n = self.chart.dim();
        let (x, u) = p.split_at(n);
        let lambda = self.chart.lambda(x);
        let gamma = self.chart.christoffels_unchecked(x);
        let t = 0.5 * lambda * norm_sq(u);
        let (a, b) = (self.a.eval(t), self.b.eval(t));
        let mut vert = Matrix::zeros(n);
        for k in 0..n {
            for l in 0..n {
                let delta = if k == l { a * lambda } else { 0.0 };
                vert[(k, l)] = delta + b * lambda * u[k] * lambda * u[l];
            }
        }
        // conn[(k, i)] = Γ^k_ij u^j
        let mut conn = Matrix::zeros(n);
        for k in 0..n {
            for i in 0..n {
                conn[(k, i)] = (0..n).map(|j| gamma[(k * n + i) * n + j] * u[j]).sum();
            }
        }
        // mixed[(i, l)] = conn^k_i V_kl
        let mut mixed = Matrix::zeros(n);
        for i in 0..n {
            for l in 0..n {
                mixed[(i, l)] = (0..n).map(|k| conn[(k, i)] * vert[(k, l)]).sum();
            }
        }
        let mut g = Matrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                let horiz = if i == j { lambda } else { 0.0 };
                let extra: f64 = (0..n).map(|l| mixed[(i, l)] * conn[(l, j)]).sum();
                g[(i, j)] = horiz + extra;
                g[(i, n + j)] = mixed[(i, j)];
                g[(n + j, i)] = mixed[(i, j)];
                g[(n + i, n + j)] = vert[(i, j)];
            }
        }
        // products are evaluated in index order, so rounding can differ
        // between (i, j) and (j, i)
        for i in 0..2 * n {
            for j in 0..i {
                let avg = 0.5 * (g[(i, j)] + g[(j, i)]);
                g[(i, j)] = avg;
                g[(j, i)] = avg;
            }
        }
        g.scaled(self.scale)
    }
}

/// The chart metric `λ(x)·I` itself, for self-tests.
#[derive(Debug, Clone)]
pub struct BaseMetric(pub ConformalChart);

impl MetricField for BaseMetric {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn metric_at(&self, x: &[f64]) -> Matrix {
        Matrix::identity(self.0.dim()).scaled(self.0.lambda(x))
    }
}

/// Components of the metric of `m` at `pt` in the frame `(∂x^i, ∂u^i)`.
pub fn assemble_total_metric(
    chart: &ConformalChart,
    m: &GNaturalMetric,
    pt: &TangentChartPoint,
) -> Result<Matrix, OracleError> {
    chart.check_point(&pt.x)?;
    if pt.u.len() != chart.dim() {
        return Err(OracleError::DimensionMismatch { expected: chart.dim(), got: pt.u.len() });
    }
    Ok(TotalSpaceMetric::new(chart, m).metric_at(&pt.coords()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericScalar {
    pub value: f64,
    pub condition: f64,
    pub ill_conditioned: bool,
}

fn numeric(field: &dyn MetricField, p: &[f64], scheme: FdScheme) -> Result<NumericScalar, OracleError> {
    let geo = curvature_at(field, p, scheme)?;
    Ok(NumericScalar {
        value: geo.scalar,
        condition: geo.condition,
        ill_conditioned: geo.condition.is_nan() || geo.condition > ILL_CONDITIONED,
    })
}

/// Scalar curvature of the assembled total-space metric at `pt`, central
/// differences with Richardson extrapolation at `step`.
pub fn scalar_curvature_numeric(
    chart: &ConformalChart,
    m: &GNaturalMetric,
    pt: &TangentChartPoint,
    step: f64,
) -> Result<NumericScalar, OracleError> {
    scalar_curvature_numeric_with(chart, m, pt, FdScheme { step, richardson: true })
}

pub fn scalar_curvature_numeric_with(
    chart: &ConformalChart,
    m: &GNaturalMetric,
    pt: &TangentChartPoint,
    scheme: FdScheme,
) -> Result<NumericScalar, OracleError> {
    chart.check_margin(&pt.x, scheme.step)?;
    if pt.u.len() != chart.dim() {
        return Err(OracleError::DimensionMismatch { expected: chart.dim(), got: pt.u.len() });
    }
    numeric(&TotalSpaceMetric::new(chart, m), &pt.coords(), scheme)
}

/// Scalar curvature of the chart metric alone; equals `n(n-1)C` exactly.
pub fn base_scalar_curvature(
    chart: &ConformalChart,
    x: &[f64],
    scheme: FdScheme,
) -> Result<NumericScalar, OracleError> {
    chart.check_margin(x, scheme.step)?;
    numeric(&BaseMetric(chart.clone()), x, scheme)
}

/// Pass thresholds: relative error where `|closed| >= 1`, absolute below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { relative: 1e-4, absolute: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationConfig {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: Tolerance,
    pub step: f64,
    /// Fibre coordinates are drawn from `|u| <= fiber_radius`.
    pub fiber_radius: f64,
    pub formula: FormulaVariant,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            samples: 20,
            seed: 42,
            tolerance: Tolerance::default(),
            step: 1e-3,
            fiber_radius: 3.0,
            formula: FormulaVariant::Literature,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSample {
    pub point: TangentChartPoint,
    pub t: f64,
    pub closed: f64,
    pub oracle: f64,
    /// Relative error if `|closed| >= 1`, absolute error otherwise.
    pub error: f64,
    pub relative: bool,
    pub ill_conditioned: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub samples: Vec<OracleSample>,
    pub max_rel_err: f64,
    pub max_abs_err: f64,
    pub step: f64,
    pub tolerance: Tolerance,
    pub formula: FormulaVariant,
    pub pass: bool,
}

fn sample_ball(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-radius..=radius)).collect();
        if norm_sq(&v) <= radius * radius {
            return v;
        }
    }
}

/// The pieces of [`cross_validate`], so that callers can evaluate samples
/// in parallel and merge them in index order.
#[derive(Debug, Clone)]
pub struct Validator {
    chart: ConformalChart,
    metric: GNaturalMetric,
    closed_form: FloatRational,
    config: ValidationConfig,
}

impl Validator {
    pub fn new(chart: &ConformalChart, m: &GNaturalMetric, config: &ValidationConfig) -> Result<Self, OracleError> {
        let profile = scalar_profile_with(m, chart.space_form(), config.formula)?;
        Ok(Validator {
            chart: chart.clone(),
            metric: m.clone(),
            closed_form: FloatRational::new(&profile.sc),
            config: config.clone(),
        })
    }

    /// The seeded sample points: `x` uniform in the ball the finite
    /// differences allow, `u` uniform in `|u| <= fiber_radius`.
    pub fn points(&self) -> Result<Vec<TangentChartPoint>, OracleError> {
        let config = &self.config;
        if !(config.step > 0.0 && config.step.is_finite()) {
            return Err(OracleError::InvalidStep);
        }
        let radius = self.chart.radius();
        // stay strictly inside the margin
        let reach = (radius - 4.0 * config.step) * (1.0 - 1e-9);
        if reach <= 0.0 {
            return Err(OracleError::StepTooLarge { step: config.step, radius });
        }
        let n = self.chart.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        Ok((0..config.samples)
            .map(|_| {
                let x = sample_ball(&mut rng, n, reach);
                let u = sample_ball(&mut rng, n, config.fiber_radius);
                TangentChartPoint::new(x, u)
            })
            .collect())
    }

    pub fn sample(&self, point: TangentChartPoint) -> Result<OracleSample, OracleError> {
        let t = point.t(&self.chart);
        let closed = self.closed_form.eval(t);
        let numeric = scalar_curvature_numeric(&self.chart, &self.metric, &point, self.config.step)?;
        let diff = (numeric.value - closed).abs();
        let relative = closed.abs() >= 1.0;
        let error = if relative { diff / closed.abs() } else { diff };
        Ok(OracleSample {
            point,
            t,
            closed,
            oracle: numeric.value,
            error,
            relative,
            ill_conditioned: numeric.ill_conditioned,
        })
    }

    pub fn report(&self, samples: Vec<OracleSample>) -> ValidationReport {
        let tol = self.config.tolerance;
        let (mut max_rel, mut max_abs, mut pass) = (0.0f64, 0.0f64, true);
        for s in &samples {
            if s.relative {
                max_rel = max_rel.max(s.error);
                pass &= s.error <= tol.relative;
            } else {
                max_abs = max_abs.max(s.error);
                pass &= s.error <= tol.absolute;
            }
        }
        ValidationReport {
            samples,
            max_rel_err: max_rel,
            max_abs_err: max_abs,
            step: self.config.step,
            tolerance: tol,
            formula: self.config.formula,
            pass,
        }
    }
}

/// Compares the oracle with the closed form at `config.samples` seeded
/// pseudo-random points; the closed form is evaluated at `t = ½λ(x)|u|²`.
pub fn cross_validate(
    chart: &ConformalChart,
    m: &GNaturalMetric,
    config: &ValidationConfig,
) -> Result<ValidationReport, OracleError> {
    let v = Validator::new(chart, m, config)?;
    let samples = v.points()?.into_iter().map(|p| v.sample(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(v.report(samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::metrics::Builtin;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn christoffels_vanish_at_origin_and_when_flat() {
        let hyp = ConformalChart::new(&SpaceForm::hyperbolic_plane());
        assert!(base_christoffels(&hyp, &[0.0, 0.0]).unwrap().iter().all(|&g| g == 0.0));
        let flat = ConformalChart::new(&SpaceForm::new(3, rat(0, 1)).unwrap());
        assert!(base_christoffels(&flat, &[0.1, -0.2, 0.3]).unwrap().iter().all(|&g| g == 0.0));
    }

    #[test]
    fn hyperbolic_christoffels_off_origin() {
        let hyp = ConformalChart::new(&SpaceForm::hyperbolic_plane());
        let x = [0.3, 0.0];
        let d1 = 0.6 / 0.91;
        assert!(close(hyp.dphi(&x)[0], d1, 1e-15));
        let g = base_christoffels(&hyp, &x).unwrap();
        let at = |k: usize, i: usize, j: usize| g[(k * 2 + i) * 2 + j];
        assert!(close(at(0, 0, 0), d1, 1e-15));
        assert!(close(at(1, 0, 1), d1, 1e-15));
        assert!(close(at(0, 1, 1), -d1, 1e-15));
        assert_eq!(at(1, 1, 1), 0.0);
        assert!(base_christoffels(&hyp, &[0.6, 0.0]).is_err());
    }

    #[test]
    fn assembled_blocks() {
        let hyp = ConformalChart::new(&SpaceForm::hyperbolic_plane());
        let paper = GNaturalMetric::builtin(Builtin::Paper);
        let g = assemble_total_metric(&hyp, &paper, &TangentChartPoint::new(vec![0.0, 0.0], vec![0.0, 0.0])).unwrap();
        assert!(g.is_symmetric());
        for i in 0..4 {
            for j in 0..4 {
                let expected = match (i, j) {
                    (i, j) if i == j && i < 2 => 4.0,
                    (i, j) if i == j => 0.04,
                    _ => 0.0,
                };
                assert!(close(g[(i, j)], expected, 1e-15), "{i} {j}");
            }
        }
        let pt = TangentChartPoint::new(vec![0.0, 0.0], vec![1.0, 0.0]);
        assert_eq!(pt.t(&hyp), 2.0);
        let g = assemble_total_metric(&hyp, &paper, &pt).unwrap();
        assert!(close(g[(2, 2)], 0.04 + 16.0 * 3.0, 1e-12));
        assert!(close(g[(3, 3)], 0.04, 1e-15));
        assert_eq!(g[(2, 3)], 0.0);
        assert_eq!(g[(0, 2)], 0.0);
    }

    #[test]
    fn step_margin_is_enforced() {
        let hyp = ConformalChart::new(&SpaceForm::hyperbolic_plane());
        let paper = GNaturalMetric::builtin(Builtin::Paper);
        let pt = TangentChartPoint::new(vec![0.0, 0.0], vec![0.0, 0.0]);
        assert_eq!(
            scalar_curvature_numeric(&hyp, &paper, &pt, 0.4),
            Err(OracleError::StepTooLarge { step: 0.4, radius: 0.5 })
        );
        assert_eq!(scalar_curvature_numeric(&hyp, &paper, &pt, -1.0), Err(OracleError::InvalidStep));
        assert!(ConformalChart::with_radius(&SpaceForm::hyperbolic_plane(), 0.9).is_err());
    }

    #[test]
    fn base_self_test_hyperbolic_plane() {
        let hyp = ConformalChart::new(&SpaceForm::hyperbolic_plane());
        let s = base_scalar_curvature(&hyp, &[0.2, -0.1], FdScheme::default()).unwrap();
        assert!(close(s.value, -2.0, 1e-6), "{}", s.value);
    }

    #[test]
    fn paper_metric_at_zero_section() {
        let hyp = ConformalChart::new(&SpaceForm::hyperbolic_plane());
        let paper = GNaturalMetric::builtin(Builtin::Paper);
        let pt = TangentChartPoint::new(vec![0.0, 0.0], vec![0.0, 0.0]);
        let s = scalar_curvature_numeric(&hyp, &paper, &pt, 1e-3).unwrap();
        assert!(((s.value - 19998.0) / 19998.0).abs() < 1e-4, "{}", s.value);
    }
}
