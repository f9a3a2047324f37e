//! Command-line front end: argument structures, output rendering, and the
//! dispatch used by the thin `stirling` binary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 approximant domain error. Stdout carries data only; diagnostics go to
//! stderr. Big numbers are emitted as strings in JSON payloads, marked by
//! `"numeric_encoding": "string"`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Rational;
use serde::Serialize;

use crate::asympt::{moment_gap, moments_exact, ratio_report, seq_params};
use crate::error::Error;
use crate::exact::{row_sum, Family, Kind, RowSumKind, Triangle};
use crate::real::{bits_for_digits, sci_string};
use crate::suites::{run_suite, Suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_APPROX_DOMAIN: i32 = 3;

/// Environment variable overriding the default decimal precision.
pub const PRECISION_ENV: &str = "STIRLING_PRECISION_DIGITS";

#[derive(Debug, Parser)]
#[command(
    name = "stirling",
    about = "Exact and asymptotic numerics for the Stirling-family numbers",
    version
)]
pub struct CliArgs {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Stirling,
    Chebyshev,
    Jacobi,
    Bell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Args)]
pub struct CommonOpts {
    /// Decimal digits carried by analytic computations (min 20).
    #[arg(long, global = true)]
    pub precision_digits: Option<u32>,
    /// Output format; each subcommand has a natural default.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the payload to this path instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one exact number (or a Bell number with --kind bell).
    Exact {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Gamma parameter for the Jacobi family, as `p/q`.
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit a full triangle up to --n-max (CSV `n,j,value` by default).
    Table {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate the closed-form approximant and the exact/approx ratio.
    Approx {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exact moments, the elementary sequences, and their gaps.
    Moments {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        /// Series order for the generating-function suite.
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Upper bound on triangle sizes accepted from the command line.
pub const N_MAX_GUARD: usize = 5000;

fn parse_gamma(text: &str) -> Result<Rational, String> {
    let r: Rational = text
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse gamma '{text}' as p/q"))?;
    if r <= 0u32 {
        return Err(format!("gamma must be positive, got {r}"));
    }
    Ok(r)
}

fn resolve_precision(requested: Option<u32>) -> Result<(u32, u32), String> {
    let digits = match requested {
        Some(d) => d,
        None => match std::env::var(PRECISION_ENV) {
            Ok(text) => text
                .trim()
                .parse::<u32>()
                .map_err(|_| format!("cannot parse {PRECISION_ENV}='{text}'"))?,
            Err(_) => 100,
        },
    };
    if digits < 20 {
        return Err(format!("precision_digits must be at least 20, got {digits}"));
    }
    Ok((digits, bits_for_digits(digits)))
}

fn emit(payload: &str, out: &Option<std::path::PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload),
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(payload.as_bytes())
        }
    }
}

#[derive(Serialize)]
struct ExactPayload {
    kind: &'static str,
    gamma: Option<String>,
    n: usize,
    j: Option<usize>,
    value: String,
    numeric_encoding: &'static str,
}

#[derive(Serialize)]
struct ApproxPayload {
    kind: &'static str,
    n: usize,
    j: usize,
    exact: String,
    approx: String,
    ratio: String,
    x: String,
    correction: String,
    precision_digits: u32,
    numeric_encoding: &'static str,
}

#[derive(Serialize)]
struct MomentsPayload {
    kind: &'static str,
    n: usize,
    mean: String,
    variance: String,
    lambda3: String,
    a: String,
    b: String,
    c: String,
    mean_gap: String,
    variance_gap: String,
    lambda3_gap: String,
    precision_digits: u32,
    numeric_encoding: &'static str,
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

/// Runs a parsed command; returns the process exit code.
pub fn run(args: CliArgs) -> i32 {
    match args.command {
        Command::Exact {
            kind,
            gamma,
            n,
            j,
            common,
        } => cmd_exact(kind, gamma, n, j, &common),
        Command::Table {
            kind,
            gamma,
            n_max,
            common,
        } => cmd_table(kind, gamma, n_max, &common),
        Command::Approx { kind, n, j, common } => cmd_approx(kind, n, j, &common),
        Command::Moments { kind, n, common } => cmd_moments(kind, n, &common),
        Command::Verify {
            suite,
            n_max,
            order,
            common,
        } => cmd_verify(&suite, n_max, order, &common),
    }
}

fn family_of(kind: KindArg) -> Option<Family> {
    match kind {
        KindArg::Stirling => Some(Family::Stirling),
        KindArg::Chebyshev => Some(Family::Chebyshev),
        _ => None,
    }
}

fn triangle_kind_of(kind: KindArg) -> Option<Kind> {
    match kind {
        KindArg::Stirling => Some(Kind::Stirling),
        KindArg::Chebyshev => Some(Kind::Chebyshev),
        KindArg::Jacobi => Some(Kind::Jacobi),
        KindArg::Bell => None,
    }
}

fn kind_str(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Stirling => "stirling",
        KindArg::Chebyshev => "chebyshev",
        KindArg::Jacobi => "jacobi",
        KindArg::Bell => "bell",
    }
}

fn two_gamma_from(gamma: &Option<String>) -> Result<Option<Rational>, String> {
    match gamma {
        None => Ok(None),
        Some(text) => {
            let g = parse_gamma(text)?;
            Ok(Some(g * Rational::from(2)))
        }
    }
}

fn cmd_exact(
    kind: KindArg,
    gamma: Option<String>,
    n: usize,
    j: Option<usize>,
    common: &CommonOpts,
) -> i32 {
    if n > N_MAX_GUARD {
        return usage_error(&format!("n exceeds the guard {N_MAX_GUARD}"));
    }
    let two_gamma = match two_gamma_from(&gamma) {
        Ok(g) => g,
        Err(e) => return usage_error(&e),
    };
    let value: Rational = match kind {
        KindArg::Bell => {
            if j.is_some() {
                return usage_error("--j is not meaningful with --kind bell");
            }
            Rational::from(row_sum(RowSumKind::Bell, n))
        }
        KindArg::Jacobi => {
            let Some(tg) = two_gamma.clone() else {
                return usage_error("--kind jacobi requires --gamma p/q");
            };
            let Some(jv) = j else {
                return usage_error("--j is required for a single entry");
            };
            if jv > n {
                Rational::new()
            } else {
                match Triangle::jacobi(tg, n) {
                    Ok(t) => t.entry(n, jv),
                    Err(e) => return usage_error(&e.to_string()),
                }
            }
        }
        KindArg::Stirling | KindArg::Chebyshev => {
            let Some(jv) = j else {
                return usage_error("--j is required for a single entry");
            };
            let family = family_of(kind).expect("stirling or chebyshev");
            if jv > n {
                Rational::new()
            } else {
                Rational::from(crate::exact::family_row(family, n)[jv].clone())
            }
        }
    };
    let rendered = rational_text(&value);
    let payload = match common.format.unwrap_or(Format::Plain) {
        Format::Plain => format!("{rendered}\n"),
        Format::Csv => format!("n,j,value\n{n},{},{rendered}\n", j.map_or_else(String::new, |v| v.to_string())),
        Format::Json => {
            let p = ExactPayload {
                kind: kind_str(kind),
                gamma,
                n,
                j,
                value: rendered,
                numeric_encoding: "string",
            };
            let mut s = serde_json::to_string_pretty(&p).expect("serializable");
            s.push('\n');
            s
        }
    };
    match emit(&payload, &common.out) {
        Ok(()) => EXIT_OK,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

/// Exact decimal text: integers bare, non-integers as `p/q`.
fn rational_text(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        value.to_string()
    }
}

/// CSV triangle: header `n,j,value`, one row per entry, exact decimal text.
pub fn triangle_to_csv(t: &Triangle) -> String {
    let mut out = String::from("n,j,value\n");
    for n in 0..=t.n_max() {
        for j in 0..=n {
            out.push_str(&format!("{n},{j},{}\n", rational_text(&t.entry(n, j))));
        }
    }
    out
}

/// Parses the CSV emitted by `triangle_to_csv`; returns `(n, j, value)`
/// triples. Round-trip partner used by tests.
pub fn triangle_from_csv(text: &str) -> Result<Vec<(usize, usize, Rational)>, String> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line.trim() != "n,j,value" {
                return Err(format!("unexpected header '{line}'"));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("malformed line {i}: '{line}'"));
        }
        let n = parts[0].parse::<usize>().map_err(|e| e.to_string())?;
        let j = parts[1].parse::<usize>().map_err(|e| e.to_string())?;
        let v = parts[2].parse::<Rational>().map_err(|_| format!("bad value on line {i}"))?;
        entries.push((n, j, v));
    }
    Ok(entries)
}

fn cmd_table(kind: KindArg, gamma: Option<String>, n_max: usize, common: &CommonOpts) -> i32 {
    if n_max > N_MAX_GUARD {
        return usage_error(&format!("n_max exceeds the guard {N_MAX_GUARD}"));
    }
    let Some(tk) = triangle_kind_of(kind) else {
        return usage_error("table needs --kind stirling|chebyshev|jacobi");
    };
    let two_gamma = match two_gamma_from(&gamma) {
        Ok(Some(g)) => g,
        Ok(None) => {
            if tk == Kind::Jacobi {
                return usage_error("--kind jacobi requires --gamma p/q");
            }
            Rational::from(1)
        }
        Err(e) => return usage_error(&e),
    };
    let triangle = match Triangle::build(tk, two_gamma.clone(), n_max) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let payload = match common.format.unwrap_or(Format::Csv) {
        Format::Csv | Format::Plain => triangle_to_csv(&triangle),
        Format::Json => {
            #[derive(Serialize)]
            struct TablePayload {
                kind: &'static str,
                two_gamma: String,
                n_max: usize,
                entries: Vec<(usize, usize, String)>,
                numeric_encoding: &'static str,
            }
            let mut entries = Vec::new();
            for n in 0..=triangle.n_max() {
                for j in 0..=n {
                    entries.push((n, j, rational_text(&triangle.entry(n, j))));
                }
            }
            let p = TablePayload {
                kind: kind_str(kind),
                two_gamma: two_gamma.to_string(),
                n_max,
                entries,
                numeric_encoding: "string",
            };
            let mut s = serde_json::to_string_pretty(&p).expect("serializable");
            s.push('\n');
            s
        }
    };
    match emit(&payload, &common.out) {
        Ok(()) => EXIT_OK,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_approx(kind: KindArg, n: usize, j: usize, common: &CommonOpts) -> i32 {
    let Some(family) = family_of(kind) else {
        return usage_error("approx needs --kind stirling|chebyshev");
    };
    let (digits, bits) = match resolve_precision(common.precision_digits) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    if n == 0 {
        return usage_error("approx requires n >= 1");
    }
    if n > N_MAX_GUARD {
        return usage_error(&format!("n exceeds the guard {N_MAX_GUARD}"));
    }
    let report = match ratio_report(family, n, j, bits) {
        Ok(r) => r,
        Err(e @ Error::CorrectionNonPositive { .. }) => {
            eprintln!("error: {e}");
            return EXIT_APPROX_DOMAIN;
        }
        Err(e) => return usage_error(&e.to_string()),
    };
    let payload = ApproxPayload {
        kind: kind_str(kind),
        n,
        j,
        exact: report.exact.to_string(),
        approx: sci_string(&report.approx, digits.min(30) as usize),
        ratio: sci_string(&report.ratio, 15),
        x: sci_string(&report.x, 15),
        correction: sci_string(&report.correction, 15),
        precision_digits: digits,
        numeric_encoding: "string",
    };
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json | Format::Csv => {
            let mut s = serde_json::to_string_pretty(&payload).expect("serializable");
            s.push('\n');
            s
        }
        Format::Plain => format!(
            "kind: {}\nn: {}\nj: {}\nexact: {}\napprox: {}\nratio: {}\nx: {}\ncorrection: {}\nprecision_digits: {}\n",
            payload.kind,
            payload.n,
            payload.j,
            payload.exact,
            payload.approx,
            payload.ratio,
            payload.x,
            payload.correction,
            payload.precision_digits
        ),
    };
    match emit(&text, &common.out) {
        Ok(()) => EXIT_OK,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_moments(kind: KindArg, n: usize, common: &CommonOpts) -> i32 {
    let Some(family) = family_of(kind) else {
        return usage_error("moments needs --kind stirling|chebyshev");
    };
    if n < 2 {
        return usage_error("moments requires n >= 2");
    }
    if n > N_MAX_GUARD {
        return usage_error(&format!("n exceeds the guard {N_MAX_GUARD}"));
    }
    let (digits, bits) = match resolve_precision(common.precision_digits) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let moments = match moments_exact(family, n, bits) {
        Ok(m) => m,
        Err(e) => return usage_error(&e.to_string()),
    };
    let params = seq_params(family, n, bits);
    let gaps = match moment_gap(family, n, bits) {
        Ok(g) => g,
        Err(e) => return usage_error(&e.to_string()),
    };
    let lambda3 = moments
        .lambda3
        .as_ref()
        .map_or_else(|| "degenerate".to_string(), |l| sci_string(l, 20));
    let payload = MomentsPayload {
        kind: kind_str(kind),
        n,
        mean: moments.mean.to_string(),
        variance: moments.variance.to_string(),
        lambda3,
        a: sci_string(&params.a, 20),
        b: sci_string(&params.b, 20),
        c: sci_string(&params.c, 20),
        mean_gap: sci_string(&gaps.mean, 6),
        variance_gap: sci_string(&gaps.variance, 6),
        lambda3_gap: sci_string(&gaps.lambda3, 6),
        precision_digits: digits,
        numeric_encoding: "string",
    };
    let text = match common.format.unwrap_or(Format::Plain) {
        Format::Json | Format::Csv => {
            let mut s = serde_json::to_string_pretty(&payload).expect("serializable");
            s.push('\n');
            s
        }
        Format::Plain => format!(
            "kind: {}\nn: {}\nmean: {}\nvariance: {}\nlambda3: {}\na: {}\nb: {}\nc: {}\nmean_gap: {}\nvariance_gap: {}\nlambda3_gap: {}\n",
            payload.kind,
            payload.n,
            payload.mean,
            payload.variance,
            payload.lambda3,
            payload.a,
            payload.b,
            payload.c,
            payload.mean_gap,
            payload.variance_gap,
            payload.lambda3_gap
        ),
    };
    match emit(&text, &common.out) {
        Ok(()) => EXIT_OK,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_verify(suite: &str, n_max: Option<usize>, order: Option<usize>, common: &CommonOpts) -> i32 {
    let Some(parsed) = Suite::parse(suite) else {
        return usage_error(&format!(
            "unknown suite '{suite}' (expected paper|identities|zeros|unimodality|clt|moments|egf)"
        ));
    };
    if let Some(nm) = n_max {
        if nm > N_MAX_GUARD {
            return usage_error(&format!("n_max exceeds the guard {N_MAX_GUARD}"));
        }
    }
    let (_, bits) = match resolve_precision(common.precision_digits) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let opts = SuiteOptions {
        n_max,
        order,
        precision_bits: bits,
    };
    let report = run_suite(parsed, &opts);
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json | Format::Csv => {
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Plain => {
            let mut s = format!(
                "suite: {}\ncases: {}\nfailures: {}\n",
                report.suite,
                report.cases,
                report.failures.len()
            );
            for f in &report.failures {
                s.push_str(&format!(
                    "FAIL {} expected {} got {} (tolerance {})\n",
                    f.case, f.expected, f.got, f.tolerance
                ));
            }
            s
        }
    };
    if emit(&text, &common.out).is_err() {
        return usage_error("cannot write output");
    }
    if report.failures.is_empty() {
        EXIT_OK
    } else {
        eprintln!(
            "suite '{}' failed {} of {} cases",
            report.suite,
            report.failures.len(),
            report.cases
        );
        EXIT_VERIFY_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_parsing() {
        assert_eq!(parse_gamma("1/2").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_gamma("3").unwrap(), Rational::from(3));
        assert!(parse_gamma("-1").is_err());
        assert!(parse_gamma("x").is_err());
    }

    #[test]
    fn csv_round_trip() {
        let t = Triangle::jacobi(Rational::from((3, 2)), 6).unwrap();
        let csv = triangle_to_csv(&t);
        let entries = triangle_from_csv(&csv).unwrap();
        assert_eq!(entries.len(), 7 * 8 / 2);
        for (n, j, v) in entries {
            assert_eq!(v, t.entry(n, j), "({n},{j})");
        }
    }

    #[test]
    fn csv_rejects_bad_header() {
        assert!(triangle_from_csv("a,b,c\n1,1,1\n").is_err());
    }

    #[test]
    fn integer_rendering_has_no_exponent() {
        let t = Triangle::stirling(30);
        let csv = triangle_to_csv(&t);
        for line in csv.lines().skip(1) {
            let value = line.rsplit(',').next().unwrap();
            assert!(value.bytes().all(|b| b.is_ascii_digit()), "{value}");
        }
    }
}
