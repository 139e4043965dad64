//! Turning command-line strings into exact pipeline inputs.

use psc_core::exactalg::{parse_rational, rat, Rational};
use psc_core::metrics::{parse_expr, Eigenvalue, RefutationKind, Validation};
use psc_core::{validate, GNaturalMetric, RationalFunction, SpaceForm};

use crate::args::{BaseArgs, MetricArgs};
use crate::error::CliError;

/// Exact value of a decimal, fraction or `1e-6`-style literal.
pub fn parse_exact(what: &str, s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("{what}: `{s}` is not a rational number"));
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let m = parse_rational(mantissa).ok_or_else(bad)?;
    if exponent.unsigned_abs() > 1000 {
        return Err(bad());
    }
    let ten = Rational::from_integer(10.into());
    let factor = num_traits::pow(ten, exponent.unsigned_abs() as usize);
    Ok(if exponent >= 0 { m * factor } else { m / factor })
}

/// A positive rational, e.g. a precision or step.
pub fn parse_positive(what: &str, s: &str) -> Result<Rational, CliError> {
    let q = parse_exact(what, s)?;
    if q <= rat(0, 1) {
        return Err(CliError::Usage(format!("{what} must be positive, got {s}")));
    }
    Ok(q)
}

pub fn parse_coefficient(what: &str, src: &str) -> Result<RationalFunction, CliError> {
    parse_expr(src).map_err(|source| CliError::Parse { what: format!("{what} `{src}`"), source })
}

pub fn space_form(base: &BaseArgs) -> Result<SpaceForm, CliError> {
    let c = parse_exact("--C", &base.c)?;
    SpaceForm::new(base.n, c).map_err(|e| CliError::Usage(e.to_string()))
}

/// Explains why [`validate`] rejected a metric.
pub fn describe_refutation(m: &GNaturalMetric) -> Option<String> {
    let Validation::Refuted(r) = validate(m) else { return None };
    let name = match r.eigenvalue {
        Eigenvalue::Perpendicular => "a(t)",
        Eigenvalue::Along => "alpha(t) = a(t) + 2t b(t)",
    };
    Some(match r.kind {
        RefutationKind::Pole => format!("{name} has a pole on [0, inf)"),
        RefutationKind::NonPositive(w) => match w {
            psc_core::exactalg::SignWitness::At { t, value } => {
                format!("{name} is not positive at t = {t} (value {value})")
            }
            psc_core::exactalg::SignWitness::Zero(iv) => {
                format!("{name} vanishes in [{}, {}]", iv.lo, iv.hi)
            }
        },
    })
}

/// Builds the metric from `--metric` or `--a/--b`, then validates it.
pub fn resolve_metric(
    name: Option<&str>,
    a: Option<&str>,
    b: Option<&str>,
    scale: &str,
    flag: &str,
) -> Result<GNaturalMetric, CliError> {
    let m = match (name, a) {
        (Some(name), _) => GNaturalMetric::by_name(name).map_err(|e| CliError::Usage(e.to_string()))?,
        (None, Some(a)) => {
            let a = parse_coefficient("a", a)?;
            let b = match b {
                Some(b) => parse_coefficient("b", b)?,
                None => RationalFunction::zero(),
            };
            GNaturalMetric::new(a, b)
        }
        (None, None) => return Err(CliError::Usage(format!("give --{flag} or an --a expression"))),
    };
    let scale = parse_exact("scale", scale)?;
    let m = m.with_scale(scale).map_err(|e| CliError::InvalidMetric(e.to_string()))?;
    match describe_refutation(&m) {
        Some(reason) => Err(CliError::InvalidMetric(reason)),
        None => Ok(m),
    }
}

pub fn metric(args: &MetricArgs) -> Result<GNaturalMetric, CliError> {
    resolve_metric(args.metric.as_deref(), args.a.as_deref(), args.b.as_deref(), &args.scale, "metric")
}

/// An inclusive grid `lo, lo + step, ..., <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub lo: Rational,
    pub hi: Rational,
    pub step: Rational,
}

/// Largest grid the tool will enumerate.
pub const MAX_GRID_POINTS: usize = 1_000_000;

impl Grid {
    pub fn parse(what: &str, s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(CliError::Usage(format!("{what}: expected lo:hi:step, got `{s}`")));
        };
        let grid = Grid {
            lo: parse_exact(what, lo)?,
            hi: parse_exact(what, hi)?,
            step: parse_positive(what, step)?,
        };
        if grid.lo > grid.hi {
            return Err(CliError::Usage(format!("{what}: empty range `{s}`")));
        }
        if grid.len() > MAX_GRID_POINTS {
            return Err(CliError::Usage(format!("{what}: more than {MAX_GRID_POINTS} points")));
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        let count = ((&self.hi - &self.lo) / &self.step).floor().to_integer();
        usize::try_from(count).map_or(usize::MAX, |c| c.saturating_add(1))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = Rational> + '_ {
        (0..self.len()).map(move |k| &self.lo + &self.step * Rational::from_integer(k.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_literals() {
        assert_eq!(parse_exact("x", "1e-6").unwrap(), rat(1, 1_000_000));
        assert_eq!(parse_exact("x", "-1").unwrap(), rat(-1, 1));
        assert_eq!(parse_exact("x", "2.5E2").unwrap(), rat(250, 1));
        assert_eq!(parse_exact("x", "3/4").unwrap(), rat(3, 4));
        assert!(parse_exact("x", "abc").is_err());
        assert!(parse_positive("x", "0").is_err());
    }

    #[test]
    fn grids() {
        let g = Grid::parse("s", "0:2:1").unwrap();
        assert_eq!(g.points().collect::<Vec<_>>(), vec![rat(0, 1), rat(1, 1), rat(2, 1)]);
        assert_eq!(Grid::parse("s", "0:5:0.01").unwrap().len(), 501);
        assert_eq!(Grid::parse("s", "1/100:1/100:1").unwrap().len(), 1);
        assert!(Grid::parse("s", "1:0:1").is_err());
        assert!(Grid::parse("s", "0:1:0").is_err());
        assert!(Grid::parse("s", "0:1").is_err());
    }

    #[test]
    fn metric_resolution() {
        assert!(resolve_metric(Some("paper"), None, None, "1", "metric").is_ok());
        let err = resolve_metric(None, Some("1"), Some("-1"), "1", "metric").unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let err = resolve_metric(None, Some("1 +"), None, "1", "metric").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert_eq!(resolve_metric(Some("paper"), None, None, "0", "metric").unwrap_err().exit_code(), 3);
        assert_eq!(resolve_metric(Some("nope"), None, None, "1", "metric").unwrap_err().exit_code(), 2);
    }
}
