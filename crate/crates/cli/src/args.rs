use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psc_core::FormulaVariant;

#[derive(Debug, Parser)]
#[command(name = "psc", version, about = "Scalar curvature of (a, b) metrics on tangent bundles of space forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact scalar-curvature profile Sc(t), as JSON or sampled CSV.
    Profile(ProfileArgs),
    /// Certify inf Sc > 0 and enclose the bound C1.
    Certify(CertifyArgs),
    /// Decide whether one metric dominates another as a quadratic form.
    Dominate(DominateArgs),
    /// Cross-check the closed form against finite-difference curvature.
    Oracle(OracleArgs),
    /// Rank a parametrized family of metrics by certified C1.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct MetricArgs {
    /// Built-in metric: paper, cheeger-gromoll or sasaki.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub metric: Option<String>,
    /// Coefficient a(t), e.g. "1/100" or "1/(1+2t)".
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Coefficient b(t); defaults to 0.
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    pub b: Option<String>,
    /// Constant factor multiplying the whole metric.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub scale: String,
}

#[derive(Debug, Clone, Args)]
pub struct BaseArgs {
    /// Dimension of the base space form.
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Sectional curvature of the base.
    #[arg(long = "C", default_value = "-1", allow_hyphen_values = true)]
    pub c: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    Literature,
    Corrected,
}

impl From<Formula> for FormulaVariant {
    fn from(f: Formula) -> Self {
        match f {
            Formula::Literature => FormulaVariant::Literature,
            Formula::Corrected => FormulaVariant::Corrected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Curvature formula for the closed form.
    #[arg(long, value_enum, default_value_t = Formula::Literature)]
    pub formula: Formula,
    /// Write the document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub metric: MetricArgs,
    #[command(flatten)]
    pub base: BaseArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// CSV sample grid lo:hi:step over t.
    #[arg(long, default_value = "0:5:0.01")]
    pub samples: String,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub metric: MetricArgs,
    #[command(flatten)]
    pub base: BaseArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Maximum width of the C1 enclosure.
    #[arg(long, default_value = "1e-6")]
    pub precision: String,
}

#[derive(Debug, Args)]
pub struct DominateArgs {
    /// Built-in metric on the left-hand side.
    #[arg(long, conflicts_with_all = ["lhs_a", "lhs_b"])]
    pub lhs: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lhs_a: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "lhs_a")]
    pub lhs_b: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lhs_scale: String,
    /// Built-in metric on the right-hand side.
    #[arg(long, conflicts_with_all = ["rhs_a", "rhs_b"])]
    pub rhs: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub rhs_a: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "rhs_a")]
    pub rhs_b: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub rhs_scale: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub metric: MetricArgs,
    #[command(flatten)]
    pub base: BaseArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of random sample points.
    #[arg(long, visible_alias = "count", default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Relative tolerance, used where |Sc| >= 1.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Absolute tolerance, used where |Sc| < 1.
    #[arg(long, default_value_t = 1e-6)]
    pub abs_tol: f64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Radius of the base chart ball.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Fibre coordinates are drawn from |u| <= this.
    #[arg(long, default_value_t = 3.0)]
    pub fiber_radius: f64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Template for a(t) with named coefficients, e.g. "alpha".
    #[arg(long, allow_hyphen_values = true)]
    pub a_template: String,
    /// Template for b(t), e.g. "1 + beta*t".
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b_template: String,
    /// Grid for one parameter: name=lo:hi:step (repeatable).
    #[arg(long = "param", allow_hyphen_values = true)]
    pub params: Vec<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub scale: String,
    #[command(flatten)]
    pub base: BaseArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value = "1e-6")]
    pub precision: String,
}
