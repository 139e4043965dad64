//! Grid search over a parametrized family of metrics.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use psc_core::exactalg::{rat_to_f64, Rational};
use psc_core::metrics::Template;
use psc_core::{
    certify_uniform_positivity, scalar_profile_with, FormulaVariant, GNaturalMetric, SpaceForm, Verdict,
};

use crate::documents::{exact, SpaceFormDoc};
use crate::error::CliError;
use crate::inputs::{describe_refutation, Grid, MAX_GRID_POINTS};

#[derive(Debug)]
pub struct SearchSpec {
    pub a_source: String,
    pub b_source: String,
    pub a: Template,
    pub b: Template,
    /// Grids in command-line order; enumeration varies the last fastest.
    pub grids: Vec<(String, Grid)>,
    pub scale: Rational,
}

fn parse_template(what: &str, src: &str) -> Result<Template, CliError> {
    Template::parse(src).map_err(|source| CliError::Parse { what: format!("{what} `{src}`"), source })
}

impl SearchSpec {
    pub fn new(a: &str, b: &str, params: &[String], scale: Rational) -> Result<Self, CliError> {
        let (ta, tb) = (parse_template("a template", a)?, parse_template("b template", b)?);
        let mut grids: Vec<(String, Grid)> = Vec::new();
        for p in params {
            let (name, range) = p
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--param: expected name=lo:hi:step, got `{p}`")))?;
            let name = name.trim().to_string();
            if grids.iter().any(|(n, _)| *n == name) {
                return Err(CliError::Usage(format!("--param: `{name}` given twice")));
            }
            grids.push((name.clone(), Grid::parse(&format!("--param {name}"), range)?));
        }
        let mut used = ta.parameters();
        used.extend(tb.parameters());
        for name in &used {
            if !grids.iter().any(|(n, _)| n == name) {
                return Err(CliError::Usage(format!("no --param grid for `{name}`")));
            }
        }
        for (name, _) in &grids {
            if !used.contains(name) {
                return Err(CliError::Usage(format!("parameter `{name}` does not appear in the templates")));
            }
        }
        let total = grids.iter().try_fold(1usize, |acc, (_, g)| acc.checked_mul(g.len()));
        match total {
            Some(0) => return Err(CliError::Usage("empty search grid".into())),
            Some(n) if n <= MAX_GRID_POINTS => {}
            _ => return Err(CliError::Usage(format!("search grid exceeds {MAX_GRID_POINTS} points"))),
        }
        Ok(SearchSpec { a_source: a.into(), b_source: b.into(), a: ta, b: tb, grids, scale })
    }

    /// Every assignment, in lexicographic grid order.
    pub fn assignments(&self) -> Vec<Vec<(String, Rational)>> {
        let mut out: Vec<Vec<(String, Rational)>> = vec![Vec::new()];
        for (name, grid) in &self.grids {
            let values: Vec<Rational> = grid.points().collect();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push((name.clone(), v.clone()));
                        next
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub index: usize,
    pub params: BTreeMap<String, String>,
    pub a: String,
    pub b: String,
    pub verdict: &'static str,
    pub c1_lo: Option<String>,
    pub c1_hi: Option<String>,
    pub c1_lo_approx: Option<f64>,
    #[serde(skip)]
    c1_key: Option<Rational>,
    #[serde(skip)]
    verdict_rank: u8,
}

#[derive(Debug, Serialize)]
pub struct InvalidEntry {
    pub index: usize,
    pub params: BTreeMap<String, String>,
    pub reason: String,
}

enum Scored {
    Valid(Entry),
    Invalid(InvalidEntry),
}

#[derive(Debug, Serialize)]
pub struct GridDoc {
    pub name: String,
    pub lo: String,
    pub hi: String,
    pub step: String,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct SearchDoc {
    pub command: &'static str,
    pub a_template: String,
    pub b_template: String,
    pub scale: String,
    pub space_form: SpaceFormDoc,
    pub formula: &'static str,
    pub precision: String,
    pub grid: Vec<GridDoc>,
    pub evaluated: usize,
    /// Uniformly positive entries by decreasing certified lower bound, then
    /// positive-but-inf-zero, then not-positive; ties keep grid order.
    pub ranked: Vec<Entry>,
    pub invalid: Vec<InvalidEntry>,
}

fn score(
    spec: &SearchSpec,
    sf: &SpaceForm,
    formula: FormulaVariant,
    precision: &Rational,
    index: usize,
    assignment: &[(String, Rational)],
) -> Result<Scored, CliError> {
    let values: BTreeMap<String, Rational> = assignment.iter().cloned().collect();
    let params: BTreeMap<String, String> = values.iter().map(|(k, v)| (k.clone(), exact(v))).collect();
    let invalid = |reason: String| Ok(Scored::Invalid(InvalidEntry { index, params: params.clone(), reason }));
    let a = match spec.a.instantiate(&values) {
        Ok(a) => a,
        Err(e) => return invalid(format!("a: {e}")),
    };
    let b = match spec.b.instantiate(&values) {
        Ok(b) => b,
        Err(e) => return invalid(format!("b: {e}")),
    };
    let m = GNaturalMetric::new(a, b).with_scale(spec.scale.clone()).expect("scale checked positive");
    if let Some(reason) = describe_refutation(&m) {
        return invalid(reason);
    }
    let profile = scalar_profile_with(&m, sf, formula)?;
    let cert = certify_uniform_positivity(&profile, precision)?;
    let verdict_rank = match cert.verdict {
        Verdict::UniformlyPositive => 0,
        Verdict::PositiveInfZero => 1,
        Verdict::NotPositive => 2,
    };
    Ok(Scored::Valid(Entry {
        index,
        params,
        a: m.a.to_string(),
        b: m.b.to_string(),
        verdict: cert.verdict.name(),
        c1_lo: cert.c1.as_ref().map(|c| exact(&c.lo)),
        c1_hi: cert.c1.as_ref().map(|c| exact(&c.hi)),
        c1_lo_approx: cert.c1.as_ref().map(|c| rat_to_f64(&c.lo)),
        c1_key: cert.c1.map(|c| c.lo),
        verdict_rank,
    }))
}

pub fn run(
    spec: &SearchSpec,
    sf: &SpaceForm,
    formula: FormulaVariant,
    precision: &Rational,
) -> Result<SearchDoc, CliError> {
    let assignments = spec.assignments();
    let scored: Vec<Scored> = assignments
        .par_iter()
        .enumerate()
        .map(|(i, asg)| score(spec, sf, formula, precision, i, asg))
        .collect::<Result<_, _>>()?;
    let evaluated = scored.len();
    let (mut ranked, mut invalid) = (Vec::new(), Vec::new());
    for s in scored {
        match s {
            Scored::Valid(e) => ranked.push(e),
            Scored::Invalid(e) => invalid.push(e),
        }
    }
    ranked.sort_by(|x, y| {
        x.verdict_rank
            .cmp(&y.verdict_rank)
            .then_with(|| y.c1_key.cmp(&x.c1_key))
            .then_with(|| x.index.cmp(&y.index))
    });
    invalid.sort_by_key(|e| e.index);
    Ok(SearchDoc {
        command: "search",
        a_template: spec.a_source.clone(),
        b_template: spec.b_source.clone(),
        scale: exact(&spec.scale),
        space_form: SpaceFormDoc::new(sf),
        formula: formula.name(),
        precision: exact(precision),
        grid: spec
            .grids
            .iter()
            .map(|(name, g)| GridDoc {
                name: name.clone(),
                lo: exact(&g.lo),
                hi: exact(&g.hi),
                step: exact(&g.step),
                count: g.len(),
            })
            .collect(),
        evaluated,
        ranked,
        invalid,
    })
}
