//! Curvature of a metric field given only pointwise metric components.
//!
//! First derivatives of the metric come from central differences; the
//! Christoffel symbols built from them are differentiated again by central
//! differences. With Richardson extrapolation on, every difference quotient
//! combines steps `h` and `h/2` as `(4 D(h/2) - D(h)) / 3`.

use alloc::vec;
use alloc::vec::Vec;

use super::linalg::Matrix;
use super::OracleError;

/// A smooth field of symmetric positive-definite matrices on an open set.
pub trait MetricField {
    fn dim(&self) -> usize;
    fn metric_at(&self, p: &[f64]) -> Matrix;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    pub step: f64,
    pub richardson: bool,
}

impl Default for FdScheme {
    fn default() -> Self {
        FdScheme { step: 1e-3, richardson: true }
    }
}

/// Curvature data at one point. Index layouts:
/// `christoffel[m][i][j] = Γ^m_ij` and `riemann[a][b][c][d] = R_abcd`, both
/// flattened row-major.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub dim: usize,
    pub christoffel: Vec<f64>,
    pub riemann: Vec<f64>,
    pub ricci: Matrix,
    pub scalar: f64,
    /// 1-norm condition number of the metric matrix.
    pub condition: f64,
}

impl Geometry {
    pub fn gamma(&self, m: usize, i: usize, j: usize) -> f64 {
        let d = self.dim;
        self.christoffel[(m * d + i) * d + j]
    }

    pub fn riemann_lower(&self, a: usize, b: usize, c: usize, e: usize) -> f64 {
        let d = self.dim;
        self.riemann[((a * d + b) * d + c) * d + e]
    }
}

fn shifted(p: &[f64], k: usize, h: f64) -> Vec<f64> {
    let mut q = p.to_vec();
    q[k] += h;
    q
}

/// Central difference of a vector-valued function along axis `k`.
fn central<F>(f: &F, p: &[f64], k: usize, scheme: FdScheme) -> Vec<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let quotient = |h: f64| -> Vec<f64> {
        let plus = f(&shifted(p, k, h));
        let minus = f(&shifted(p, k, -h));
        plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * h)).collect()
    };
    let coarse = quotient(scheme.step);
    if !scheme.richardson {
        return coarse;
    }
    let fine = quotient(scheme.step / 2.0);
    fine.iter().zip(&coarse).map(|(f, c)| (4.0 * f - c) / 3.0).collect()
}

/// `Γ^m_ij = ½ g^{mk} (∂_i g_kj + ∂_j g_ki - ∂_k g_ij)`.
pub fn christoffel_at<M: MetricField + ?Sized>(
    field: &M,
    p: &[f64],
    scheme: FdScheme,
) -> Result<Vec<f64>, OracleError> {
    let d = field.dim();
    let metric = |q: &[f64]| field.metric_at(q).as_slice().to_vec();
    let dg: Vec<Vec<f64>> = (0..d).map(|k| central(&metric, p, k, scheme)).collect();
    let g_inv = field.metric_at(p).inverse().ok_or(OracleError::SingularMetric)?;
    let at = |k: usize, i: usize, j: usize| dg[k][i * d + j];
    let mut gamma = vec![0.0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            // first-kind symbols Γ_{k,ij}
            let first: Vec<f64> = (0..d).map(|k| 0.5 * (at(i, k, j) + at(j, k, i) - at(k, i, j))).collect();
            for m in 0..d {
                gamma[(m * d + i) * d + j] = (0..d).map(|k| g_inv[(m, k)] * first[k]).sum();
            }
        }
    }
    Ok(gamma)
}

pub fn curvature_at<M: MetricField + ?Sized>(
    field: &M,
    p: &[f64],
    scheme: FdScheme,
) -> Result<Geometry, OracleError> {
    let d = field.dim();
    let g = field.metric_at(p);
    let g_inv = g.inverse().ok_or(OracleError::SingularMetric)?;
    let condition = g.norm1() * g_inv.norm1();
    let christoffel = christoffel_at(field, p, scheme)?;
    // Γ at shifted points fails only if the metric is singular there too
    let gamma_field = |q: &[f64]| christoffel_at(field, q, scheme).unwrap_or_else(|_| vec![f64::NAN; d * d * d]);
    // dgamma[l][(m, i, j)] = ∂_l Γ^m_ij
    let dgamma: Vec<Vec<f64>> = (0..d).map(|l| central(&gamma_field, p, l, scheme)).collect();
    let gam = |m: usize, i: usize, j: usize| christoffel[(m * d + i) * d + j];
    let dgam = |l: usize, m: usize, i: usize, j: usize| dgamma[l][(m * d + i) * d + j];

    // R^r_{s mu nu} = ∂_mu Γ^r_{nu s} - ∂_nu Γ^r_{mu s} + Γ^r_{mu l} Γ^l_{nu s} - Γ^r_{nu l} Γ^l_{mu s}
    let mut upper = vec![0.0; d * d * d * d];
    for r in 0..d {
        for s in 0..d {
            for mu in 0..d {
                for nu in 0..d {
                    let mut v = dgam(mu, r, nu, s) - dgam(nu, r, mu, s);
                    for l in 0..d {
                        v += gam(r, mu, l) * gam(l, nu, s) - gam(r, nu, l) * gam(l, mu, s);
                    }
                    upper[((r * d + s) * d + mu) * d + nu] = v;
                }
            }
        }
    }
    let mut riemann = vec![0.0; d * d * d * d];
    for a in 0..d {
        for s in 0..d {
            for mu in 0..d {
                for nu in 0..d {
                    riemann[((a * d + s) * d + mu) * d + nu] =
                        (0..d).map(|k| g[(a, k)] * upper[((k * d + s) * d + mu) * d + nu]).sum();
                }
            }
        }
    }
    let mut ricci = Matrix::zeros(d);
    for s in 0..d {
        for nu in 0..d {
            ricci[(s, nu)] = (0..d).map(|r| upper[((r * d + s) * d + r) * d + nu]).sum();
        }
    }
    let scalar = (0..d)
        .flat_map(|s| (0..d).map(move |nu| (s, nu)))
        .map(|(s, nu)| g_inv[(s, nu)] * ricci[(s, nu)])
        .sum();
    Ok(Geometry { dim: d, christoffel, riemann, ricci, scalar, condition })
}
