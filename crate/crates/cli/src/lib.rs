//! Command-line front end for `hocauchy-core`: number tables, polynomial
//! coefficients, raw series coefficients and the identity verifier.
//!
//! Everything here renders to a `String`; `main` only prints and maps
//! [`CliError`] to exit codes (1 verification failure, 2 usage error).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hocauchy_core::bernoulli::{bernoulli_hi_numbers, bernoulli_hi_poly};
use hocauchy_core::cauchy::{
    cauchy1, cauchy2, cauchy_hi1, cauchy_hi2, cauchy_hi_poly1, cauchy_hi_poly2, poly_cauchy1,
    poly_cauchy2, CauchyMethod,
};
use hocauchy_core::series::named_series;
use hocauchy_core::stirling::{stirling1_signed, stirling2};
use hocauchy_core::verify::{
    render_table as render_reports, reports_to_json, run_suite, suite_passed, CheckId, Grid,
    SuiteConfig,
};
use hocauchy_core::{Poly, Rational};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or parameters; exit code 2.
    Usage(String),
    /// The verifier found a failing check; carries the rendered report. Exit code 1.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<hocauchy_core::Error> for CliError {
    fn from(e: hocauchy_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult = Result<String, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum TableFamily {
    Cauchy1,
    Cauchy2,
    CauchyHi1,
    CauchyHi2,
    PolyCauchy1,
    PolyCauchy2,
    Stirling1,
    Stirling2,
    BernoulliHi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum PolyFamily {
    CauchyHiPoly1,
    CauchyHiPoly2,
    BernoulliHiPoly,
}

#[derive(Debug, Parser)]
#[command(name = "hocauchy", version, about = "Exact higher-order Cauchy numbers, polynomials and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One row per n of a number sequence or triangle.
    Table(TableArgs),
    /// Coefficients of one polynomial, constant term first.
    Poly(PolyArgs),
    /// Ordinary coefficients of a registered power series.
    Series(SeriesArgs),
    /// Run identity checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub family: TableFamily,
    /// Order k (higher-order and poly-Cauchy families).
    #[arg(long, short = 'k', allow_negative_numbers = true)]
    pub order: Option<i64>,
    /// Bernoulli order (may be zero or negative).
    #[arg(long, short = 'a', allow_negative_numbers = true)]
    pub alpha: Option<i64>,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    pub n_max: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long, value_enum)]
    pub family: PolyFamily,
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, short = 'k', allow_negative_numbers = true)]
    pub order: Option<i64>,
    #[arg(long, short = 'a', allow_negative_numbers = true)]
    pub alpha: Option<i64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// Registry name, e.g. `cauchy1_gf` or `bernoulli_gf(-2)`.
    #[arg(long, alias = "family")]
    pub name: String,
    #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
    pub terms: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated check ids, or `all`.
    #[arg(long, default_value = "all")]
    pub checks: String,
    /// Grid overrides, e.g. `n=10,k=3,alpha=2`.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub n_max: Option<i64>,
    /// JSON file with `{"checks": [...], "grid": {...}}` defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

pub fn dispatch(command: &Command) -> CliResult {
    match command {
        Command::Table(a) => cmd_table(a.family, a.order, a.alpha, a.n_max, a.format),
        Command::Poly(a) => cmd_poly(a.family, a.n, a.order, a.alpha, a.format),
        Command::Series(a) => cmd_series(&a.name, a.terms, a.format),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn nonneg(name: &str, v: i64) -> Result<usize, CliError> {
    usize::try_from(v).map_err(|_| usage(format!("--{name} must be nonnegative, got {v}")))
}

fn require_order(order: Option<i64>) -> Result<usize, CliError> {
    match order {
        None => Err(usage("this family needs --order K with K >= 1")),
        Some(k) if k >= 1 => Ok(k as usize),
        Some(k) => Err(usage(format!("--order must be at least 1, got {k}"))),
    }
}

fn require_alpha(alpha: Option<i64>) -> Result<i64, CliError> {
    alpha.ok_or_else(|| usage("this family needs --alpha A"))
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
enum Cell {
    Scalar(Rational),
    Row(Vec<Rational>),
}

#[derive(Debug, Serialize)]
struct TableRow {
    n: usize,
    value: Cell,
}

pub fn cmd_table(
    family: TableFamily,
    order: Option<i64>,
    alpha: Option<i64>,
    n_max: i64,
    format: OutputFormat,
) -> CliResult {
    let n_max = nonneg("n-max", n_max)?;
    let rows: Vec<TableRow> = match family {
        TableFamily::Cauchy1 => scalar_rows(n_max, cauchy1),
        TableFamily::Cauchy2 => scalar_rows(n_max, cauchy2),
        TableFamily::CauchyHi1 => {
            let k = require_order(order)?;
            scalar_rows(n_max, |n| cauchy_hi1(n, k, CauchyMethod::StirlingSum))
        }
        TableFamily::CauchyHi2 => {
            let k = require_order(order)?;
            scalar_rows(n_max, |n| cauchy_hi2(n, k, CauchyMethod::StirlingSum))
        }
        TableFamily::PolyCauchy1 => {
            let k = require_order(order)?;
            scalar_rows(n_max, |n| poly_cauchy1(n, k))
        }
        TableFamily::PolyCauchy2 => {
            let k = require_order(order)?;
            scalar_rows(n_max, |n| poly_cauchy2(n, k))
        }
        TableFamily::Stirling1 => triangle_rows(n_max, |n, l| stirling1_signed(n, l).into()),
        TableFamily::Stirling2 => triangle_rows(n_max, |n, l| stirling2(n, l).into()),
        TableFamily::BernoulliHi => {
            let a = require_alpha(alpha)?;
            let values = bernoulli_hi_numbers(n_max, a);
            values
                .into_iter()
                .enumerate()
                .map(|(n, v)| TableRow { n, value: Cell::Scalar(v) })
                .collect()
        }
    };
    Ok(render_rows(&rows, format))
}

fn scalar_rows(n_max: usize, f: impl Fn(usize) -> Rational) -> Vec<TableRow> {
    (0..=n_max)
        .map(|n| TableRow {
            n,
            value: Cell::Scalar(f(n)),
        })
        .collect()
}

fn triangle_rows(n_max: usize, f: impl Fn(usize, usize) -> Rational) -> Vec<TableRow> {
    (0..=n_max)
        .map(|n| TableRow {
            n,
            value: Cell::Row((0..=n).map(|l| f(n, l)).collect()),
        })
        .collect()
}

fn join(values: &[Rational], sep: &str) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn render_rows(rows: &[TableRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            for row in rows {
                let value = match &row.value {
                    Cell::Scalar(v) => v.to_string(),
                    Cell::Row(vs) => join(vs, ","),
                };
                let _ = writeln!(out, "{},{}", row.n, value);
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for row in rows {
                let value = match &row.value {
                    Cell::Scalar(v) => v.to_string(),
                    Cell::Row(vs) => join(vs, "  "),
                };
                let _ = writeln!(out, "{:>3}  {}", row.n, value);
            }
            out
        }
    }
}

fn render_coeffs(coeffs: &[Rational], format: OutputFormat, text: impl FnOnce() -> String) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(coeffs).expect("coefficients serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => format!("{}\n", join(coeffs, ",")),
        OutputFormat::Text => format!("{}\n", text()),
    }
}

pub fn cmd_poly(
    family: PolyFamily,
    n: i64,
    order: Option<i64>,
    alpha: Option<i64>,
    format: OutputFormat,
) -> CliResult {
    let n = nonneg("n", n)?;
    let p: Poly = match family {
        PolyFamily::CauchyHiPoly1 => cauchy_hi_poly1(n, require_order(order)?),
        PolyFamily::CauchyHiPoly2 => cauchy_hi_poly2(n, require_order(order)?),
        PolyFamily::BernoulliHiPoly => bernoulli_hi_poly(n, require_alpha(alpha)?),
    };
    let coeffs: Vec<Rational> = if p.is_zero() {
        vec![Rational::zero()]
    } else {
        p.coeffs().to_vec()
    };
    Ok(render_coeffs(&coeffs, format, || p.to_string()))
}

pub fn cmd_series(name: &str, terms: i64, format: OutputFormat) -> CliResult {
    let terms = nonneg("terms", terms)?;
    let series = named_series(name, terms)?;
    let coeffs = series.coeffs().to_vec();
    Ok(render_coeffs(&coeffs, format, || {
        coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| format!("t^{j}: {c}"))
            .collect::<Vec<_>>()
            .join("\n")
    }))
}

/// Applies `n=..,k=..,alpha=..` overrides to `grid`.
pub fn apply_grid_overrides(grid: &mut Grid, spec: &str) -> Result<(), CliError> {
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("grid override `{part}` is not key=value")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| usage(format!("grid override `{part}` needs an integer")))?;
        match key.trim() {
            "n" | "n_max" => grid.n_max = value,
            "k" | "k_max" => grid.k_max = value,
            "alpha" | "alpha_max" => grid.alpha_max = value,
            other => return Err(usage(format!("unknown grid key `{other}` (expected n, k, alpha)"))),
        }
    }
    Ok(())
}

pub fn parse_checks(selection: &str) -> Result<Option<Vec<CheckId>>, CliError> {
    if selection.trim().eq_ignore_ascii_case("all") {
        return Ok(None);
    }
    let ids = selection
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<CheckId>())
        .collect::<Result<Vec<_>, _>>()?;
    if ids.is_empty() {
        return Err(usage("--checks selected nothing"));
    }
    Ok(Some(ids))
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            serde_json::from_str::<SuiteConfig>(&text)
                .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))?
        }
        None => SuiteConfig::default(),
    };
    if let Some(checks) = parse_checks(&args.checks)? {
        config.checks = Some(checks);
    }
    if let Some(spec) = &args.grid {
        apply_grid_overrides(&mut config.grid, spec)?;
    }
    if let Some(n) = args.n_max {
        config.grid.n_max = n;
    }
    let reports = run_suite(&config)?;
    let rendered = match args.format {
        OutputFormat::Json => format!("{}\n", reports_to_json(&reports)),
        OutputFormat::Text => render_reports(&reports),
        OutputFormat::Csv => {
            let mut out = String::from("id,status,cases_checked,vacuous,counterexamples,corrected_reading\n");
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.id,
                    r.status,
                    r.cases_checked,
                    r.vacuous,
                    r.counterexamples.len(),
                    r.corrected_reading.as_deref().map(|t| format!("\"{t}\"")).unwrap_or_default()
                );
            }
            out
        }
    };
    if suite_passed(&reports) {
        Ok(rendered)
    } else {
        Err(CliError::Verification(rendered))
    }
}
