//! Serializable output documents. Exact values are `p/q` strings, floats are
//! plain JSON numbers.

use serde::Serialize;

use psc_core::exactalg::{rat_to_f64, Polynomial, Rational, SignWitness};
use psc_core::metrics::{Component, Domination, Eigenvalue};
use psc_core::oracle::{OracleSample, ValidationReport};
use psc_core::{Extended, GNaturalMetric, PositivityCertificate, ScalarProfile, SpaceForm};

pub fn exact(q: &Rational) -> String {
    q.to_string()
}

fn extended(e: &Extended) -> String {
    e.to_string()
}

/// Ascending coefficients; the zero polynomial is `["0"]`.
pub fn coefficients(p: &Polynomial) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(exact).collect()
}

#[derive(Debug, Serialize)]
pub struct MetricDoc {
    pub a: String,
    pub b: String,
    pub alpha: String,
    pub scale: String,
}

impl MetricDoc {
    pub fn new(m: &GNaturalMetric) -> Self {
        MetricDoc {
            a: m.a.to_string(),
            b: m.b.to_string(),
            alpha: m.alpha().to_string(),
            scale: exact(m.scale()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SpaceFormDoc {
    pub n: u32,
    #[serde(rename = "C")]
    pub c: String,
}

impl SpaceFormDoc {
    pub fn new(sf: &SpaceForm) -> Self {
        SpaceFormDoc { n: sf.dim(), c: exact(sf.curvature()) }
    }
}

#[derive(Debug, Serialize)]
pub struct Fraction {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ProfileDoc {
    pub command: &'static str,
    pub metric: MetricDoc,
    pub space_form: SpaceFormDoc,
    pub formula: &'static str,
    /// `Sc(t)` in the input grammar; re-parses to the same function.
    pub expression: String,
    /// `"alpha-squared"` when `numerator/denominator` is written over the
    /// square of the numerator of `alpha`, `"canonical"` otherwise.
    pub form: &'static str,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    /// Reduced form with a monic denominator.
    pub canonical: Fraction,
    pub value_at_zero: String,
    pub limit: String,
}

impl ProfileDoc {
    pub fn new(p: &ScalarProfile) -> Self {
        let sc = &p.sc;
        let alpha_num = p.metric.alpha().numer().clone();
        let squared = &alpha_num * &alpha_num;
        let over_alpha = if alpha_num.is_constant() { None } else { sc.numerator_over(&squared) };
        let (form, numerator, denominator) = match over_alpha {
            Some(num) => ("alpha-squared", coefficients(&num), coefficients(&squared)),
            None => ("canonical", coefficients(sc.numer()), coefficients(sc.denom())),
        };
        ProfileDoc {
            command: "profile",
            metric: MetricDoc::new(&p.metric),
            space_form: SpaceFormDoc::new(&p.space_form),
            formula: p.formula.name(),
            expression: sc.to_string(),
            form,
            numerator,
            denominator,
            canonical: Fraction { numerator: coefficients(sc.numer()), denominator: coefficients(sc.denom()) },
            value_at_zero: sc.evaluate(&Rational::from_integer(0.into())).map(|v| exact(&v)).unwrap_or_default(),
            limit: extended(&sc.limit_at_infinity()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RootCounts {
    /// `null` when `Sc` vanishes identically.
    pub numerator: Option<usize>,
    pub denominator: usize,
}

#[derive(Debug, Serialize)]
pub struct EvidenceDoc {
    pub root_counts: RootCounts,
    pub value_at_zero: String,
    pub limit: String,
}

#[derive(Debug, Serialize)]
pub struct CertificateDoc {
    pub command: &'static str,
    pub metric: MetricDoc,
    pub space_form: SpaceFormDoc,
    pub formula: &'static str,
    pub verdict: &'static str,
    pub c1_lo: Option<String>,
    pub c1_hi: Option<String>,
    pub c1_approx: Option<f64>,
    pub witness_t: Option<String>,
    pub witness_value: Option<String>,
    /// Isolating interval when the witness is a touching root of `Sc`.
    pub witness_interval: Option<[String; 2]>,
    pub evidence: EvidenceDoc,
    pub precision: String,
}

impl CertificateDoc {
    pub fn new(p: &ScalarProfile, cert: &PositivityCertificate, precision: &Rational) -> Self {
        let (mut witness_t, mut witness_value, mut witness_interval) = (None, None, None);
        match &cert.witness {
            Some(SignWitness::At { t, value }) => {
                witness_t = Some(exact(t));
                witness_value = Some(exact(value));
            }
            Some(SignWitness::Zero(iv)) => {
                witness_t = Some(exact(&iv.midpoint()));
                witness_interval = Some([exact(&iv.lo), exact(&iv.hi)]);
                if iv.is_point() {
                    witness_value = Some("0".into());
                }
            }
            None => {}
        }
        let e = &cert.evidence;
        CertificateDoc {
            command: "certify",
            metric: MetricDoc::new(&p.metric),
            space_form: SpaceFormDoc::new(&p.space_form),
            formula: p.formula.name(),
            verdict: cert.verdict.name(),
            c1_lo: cert.c1.as_ref().map(|c| exact(&c.lo)),
            c1_hi: cert.c1.as_ref().map(|c| exact(&c.hi)),
            c1_approx: cert.c1.as_ref().map(|c| 0.5 * (rat_to_f64(&c.lo) + rat_to_f64(&c.hi))),
            witness_t,
            witness_value,
            witness_interval,
            evidence: EvidenceDoc {
                root_counts: RootCounts { numerator: e.numerator_roots, denominator: e.denominator_roots },
                value_at_zero: exact(&e.value_at_zero),
                limit: extended(&e.limit),
            },
            precision: exact(precision),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DominationWitnessDoc {
    pub component: &'static str,
    pub t: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Serialize)]
pub struct DominationDoc {
    pub command: &'static str,
    pub lhs: MetricDoc,
    pub rhs: MetricDoc,
    pub dominates: bool,
    pub witness_t: Option<String>,
    pub witness: Option<DominationWitnessDoc>,
}

impl DominationDoc {
    pub fn new(lhs: &GNaturalMetric, rhs: &GNaturalMetric, d: &Domination) -> Self {
        let witness = d.witness.as_ref().map(|w| DominationWitnessDoc {
            component: match w.component {
                Component::Horizontal => "horizontal",
                Component::Vertical(Eigenvalue::Perpendicular) => "vertical-perpendicular",
                Component::Vertical(Eigenvalue::Along) => "vertical-along",
            },
            t: exact(&w.t),
            lhs: exact(&w.lhs),
            rhs: exact(&w.rhs),
        });
        DominationDoc {
            command: "dominate",
            lhs: MetricDoc::new(lhs),
            rhs: MetricDoc::new(rhs),
            dominates: d.holds,
            witness_t: witness.as_ref().map(|w| w.t.clone()),
            witness,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SampleDoc {
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub t: f64,
    pub closed: f64,
    pub oracle: f64,
    /// Relative error if `|closed| >= 1`, absolute error otherwise.
    pub rel_err: f64,
    pub error_kind: &'static str,
    pub ill_conditioned: bool,
}

impl SampleDoc {
    fn new(s: &OracleSample) -> Self {
        SampleDoc {
            x: s.point.x.clone(),
            u: s.point.u.clone(),
            t: s.t,
            closed: s.closed,
            oracle: s.oracle,
            rel_err: s.error,
            error_kind: if s.relative { "relative" } else { "absolute" },
            ill_conditioned: s.ill_conditioned,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ToleranceDoc {
    pub relative: f64,
    pub absolute: f64,
}

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub command: &'static str,
    pub metric: MetricDoc,
    pub space_form: SpaceFormDoc,
    pub formula: &'static str,
    pub seed: u64,
    pub step: f64,
    pub chart_radius: f64,
    pub tolerance: ToleranceDoc,
    pub samples: Vec<SampleDoc>,
    pub max_rel_err: f64,
    pub max_abs_err: f64,
    pub pass: bool,
}

impl ReportDoc {
    pub fn new(m: &GNaturalMetric, sf: &SpaceForm, seed: u64, radius: f64, r: &ValidationReport) -> Self {
        ReportDoc {
            command: "oracle",
            metric: MetricDoc::new(m),
            space_form: SpaceFormDoc::new(sf),
            formula: r.formula.name(),
            seed,
            step: r.step,
            chart_radius: radius,
            tolerance: ToleranceDoc { relative: r.tolerance.relative, absolute: r.tolerance.absolute },
            samples: r.samples.iter().map(SampleDoc::new).collect(),
            max_rel_err: r.max_rel_err,
            max_abs_err: r.max_abs_err,
            pass: r.pass,
        }
    }
}
