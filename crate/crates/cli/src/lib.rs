//! The `psc` command-line tool: profile export, positivity certificates,
//! domination checks, oracle runs and family search.
//!
//! Exit status: 0 on success or a positive verdict, 1 on a negative verdict,
//! 2 for usage and parse errors, 3 for invalid metrics.

pub mod args;
pub mod documents;
pub mod error;
pub mod inputs;
pub mod search;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;

use psc_core::exactalg::rat_to_f64;
use psc_core::oracle::{Tolerance, Validator};
use psc_core::{
    certify_uniform_positivity, dominates, scalar_profile_with, ConformalChart, ValidationConfig, Verdict,
};

use args::{CertifyArgs, Cli, Command, DominateArgs, Format, OracleArgs, ProfileArgs, SearchArgs};
use documents::{CertificateDoc, DominationDoc, ProfileDoc, ReportDoc};
pub use error::CliError;
use inputs::{parse_exact, parse_positive, resolve_metric, space_form, Grid};

/// A finished command: the document to emit and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub document: String,
    pub status: u8,
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn verdict_status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

pub fn profile(args: &ProfileArgs) -> Result<Outcome, CliError> {
    let m = inputs::metric(&args.metric)?;
    let sf = space_form(&args.base)?;
    let p = scalar_profile_with(&m, &sf, args.common.formula.into())?;
    let document = match args.format {
        Format::Json => json(&ProfileDoc::new(&p)),
        Format::Csv => {
            let grid = Grid::parse("--samples", &args.samples)?;
            if grid.lo < psc_core::Rational::from_integer(0.into()) {
                return Err(CliError::Usage("--samples must start at t >= 0".into()));
            }
            let mut out = String::from("t,Sc\n");
            for t in grid.points() {
                let v = p.sc.evaluate(&t)?;
                writeln!(out, "{},{}", rat_to_f64(&t), rat_to_f64(&v)).expect("string write");
            }
            out
        }
    };
    Ok(Outcome { document, status: 0 })
}

pub fn certify(args: &CertifyArgs) -> Result<Outcome, CliError> {
    let m = inputs::metric(&args.metric)?;
    let sf = space_form(&args.base)?;
    let precision = parse_positive("--precision", &args.precision)?;
    let p = scalar_profile_with(&m, &sf, args.common.formula.into())?;
    let cert = certify_uniform_positivity(&p, &precision)?;
    Ok(Outcome {
        document: json(&CertificateDoc::new(&p, &cert, &precision)),
        status: verdict_status(cert.verdict == Verdict::UniformlyPositive),
    })
}

pub fn dominate(args: &DominateArgs) -> Result<Outcome, CliError> {
    let lhs = resolve_metric(args.lhs.as_deref(), args.lhs_a.as_deref(), args.lhs_b.as_deref(), &args.lhs_scale, "lhs")?;
    let rhs = resolve_metric(args.rhs.as_deref(), args.rhs_a.as_deref(), args.rhs_b.as_deref(), &args.rhs_scale, "rhs")?;
    let d = dominates(&lhs, &rhs)?;
    Ok(Outcome { document: json(&DominationDoc::new(&lhs, &rhs, &d)), status: verdict_status(d.holds) })
}

pub fn oracle(args: &OracleArgs) -> Result<Outcome, CliError> {
    let m = inputs::metric(&args.metric)?;
    let sf = space_form(&args.base)?;
    let chart = match args.radius {
        Some(r) => ConformalChart::with_radius(&sf, r)?,
        None => ConformalChart::new(&sf),
    };
    for (flag, v) in [("--tol", args.tol), ("--abs-tol", args.abs_tol), ("--fiber-radius", args.fiber_radius)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(CliError::Usage(format!("{flag} must be a nonnegative number")));
        }
    }
    let config = ValidationConfig {
        samples: args.samples,
        seed: args.seed,
        tolerance: Tolerance { relative: args.tol, absolute: args.abs_tol },
        step: args.step,
        fiber_radius: args.fiber_radius,
        formula: args.common.formula.into(),
    };
    let validator = Validator::new(&chart, &m, &config)?;
    let samples = validator
        .points()?
        .into_par_iter()
        .map(|p| validator.sample(p))
        .collect::<Result<Vec<_>, _>>()?;
    let report = validator.report(samples);
    Ok(Outcome {
        document: json(&ReportDoc::new(&m, &sf, args.seed, chart.radius(), &report)),
        status: verdict_status(report.pass),
    })
}

pub fn search(args: &SearchArgs) -> Result<Outcome, CliError> {
    let scale = parse_exact("--scale", &args.scale)?;
    if scale <= psc_core::Rational::from_integer(0.into()) {
        return Err(CliError::InvalidMetric("scale must be positive".into()));
    }
    let spec = search::SearchSpec::new(&args.a_template, &args.b_template, &args.params, scale)?;
    let sf = space_form(&args.base)?;
    let precision = parse_positive("--precision", &args.precision)?;
    let doc = search::run(&spec, &sf, args.common.formula.into(), &precision)?;
    Ok(Outcome { document: json(&doc), status: 0 })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Profile(a) => profile(a),
        Command::Certify(a) => certify(a),
        Command::Dominate(a) => dominate(a),
        Command::Oracle(a) => oracle(a),
        Command::Search(a) => search(a),
    }
}

fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Profile(a) => a.common.out.as_deref(),
        Command::Certify(a) => a.common.out.as_deref(),
        Command::Dominate(a) => a.out.as_deref(),
        Command::Oracle(a) => a.common.out.as_deref(),
        Command::Search(a) => a.common.out.as_deref(),
    }
}

fn emit(cli: &Cli, document: &str) -> Result<(), CliError> {
    match out_path(cli) {
        Some(path) => std::fs::write(path, document)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(document.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| CliError::Io { path: "standard output".into(), source })
        }
    }
}

/// Parses `args`, runs the command and maps the result to an exit status.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = execute(&cli).and_then(|outcome| emit(&cli, &outcome.document).map(|()| outcome.status));
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("psc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
