//! Argument handling and report rendering for the `verify` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fano_core::{ParseError, Poly, Rat};
use fano_suite::{catalog, run_all, session, Report, RunOptions, Status};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "verify", version, about = "Run the exact-arithmetic verification checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every check id with the statement it covers.
    List,
    /// Run checks and print a report.
    Run(RunArgs),
    /// Parse a polynomial and print its canonical form.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Only run checks whose id starts with this prefix.
    #[arg(long)]
    pub filter: Option<String>,
    /// Fix a free parameter, as name=p or name=p/q.
    #[arg(long = "bind", value_name = "NAME=P/Q", value_parser = parse_binding)]
    pub bindings: Vec<(String, Rat)>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub report: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random points per oracle claim.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Report measured durations; otherwise they are 0 so output is reproducible.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DISCREPANCY: u8 = 3;

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum UsageError {
    #[error("no check id starts with `{0}`")]
    EmptySelection(String),
    #[error("`{0}` is not a parameter")]
    UnknownParameter(String),
    #[error("`{name}` must stay symbolic in {}", checks.join(", "))]
    Forbidden { name: String, checks: Vec<&'static str> },
    #[error("no selected check has a free parameter `{0}`")]
    Unused(String),
    #[error("`{0}` is bound twice")]
    Duplicate(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// Parses `name=value` where value is an integer or integer/positive integer.
pub fn parse_binding(text: &str) -> Result<(String, Rat), String> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| format!("`{text}` is not of the form name=p/q"))?;
    let name = name.trim();
    let value = value.trim();
    let valid_name =
        name.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && name.chars().all(|c| c.is_ascii_alphanumeric());
    if !valid_name {
        return Err(format!("`{name}` is not a parameter name"));
    }
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = value.split_once('/').unwrap_or((value, "1"));
    if !digits(num.strip_prefix('-').unwrap_or(num)) || !digits(den) {
        return Err(format!("`{value}` is not a rational number"));
    }
    if den.bytes().all(|b| b == b'0') {
        return Err(format!("`{value}` has a zero denominator"));
    }
    let r: Rat = format!("{num}/{den}")
        .parse()
        .map_err(|_| format!("`{value}` is not a rational number"))?;
    Ok((name.to_string(), r))
}

/// Parses a polynomial over the session variables.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    fano_core::parse_poly(&session().table, text)
}

fn selected(filter: Option<&str>) -> impl Iterator<Item = &'static fano_suite::CheckSpec> + '_ {
    catalog()
        .iter()
        .filter(move |c| filter.is_none_or(|f| c.id.starts_with(f)))
}

/// Turns the command-line bindings into run options, rejecting anything
/// the selected checks cannot use.
pub fn run_options(args: &RunArgs) -> Result<RunOptions, UsageError> {
    let filter = args.filter.as_deref();
    if let Some(f) = filter {
        if selected(Some(f)).next().is_none() {
            return Err(UsageError::EmptySelection(f.to_string()));
        }
    }
    let mut bindings = BTreeMap::new();
    for (name, value) in &args.bindings {
        if !session().parameter_names().any(|p| p == name) {
            return Err(UsageError::UnknownParameter(name.clone()));
        }
        let checks = fano_suite::forbidding(filter, name);
        if !checks.is_empty() {
            return Err(UsageError::Forbidden {
                name: name.clone(),
                checks,
            });
        }
        if !selected(filter).any(|c| c.bindable.contains(&name.as_str())) {
            return Err(UsageError::Unused(name.clone()));
        }
        if bindings.insert(name.clone(), value.clone()).is_some() {
            return Err(UsageError::Duplicate(name.clone()));
        }
    }
    Ok(RunOptions {
        seed: args.seed,
        trials: args.trials,
        bindings,
    })
}

/// 1 if anything failed, otherwise 3 if anything is a discrepancy, otherwise 0.
pub fn exit_code(report: &Report) -> u8 {
    if report.count(Status::Fail) > 0 {
        EXIT_FAIL
    } else if report.count(Status::Discrepancy) > 0 {
        EXIT_DISCREPANCY
    } else {
        EXIT_PASS
    }
}

fn locus(id: &str) -> &'static str {
    catalog().iter().find(|c| c.id == id).map_or("", |c| c.locus)
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: u32,
    seed: u64,
    checks: Vec<JsonCheck<'a>>,
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    id: &'a str,
    status: &'static str,
    paper_locus: &'static str,
    witness: Option<String>,
    bindings: BTreeMap<&'a str, String>,
    duration_ms: u128,
}

pub fn render_json(report: &Report, seed: u64, timings: bool) -> String {
    let checks = report
        .results
        .iter()
        .map(|r| JsonCheck {
            id: &r.check_id,
            status: r.status.as_str(),
            paper_locus: locus(&r.check_id),
            witness: r.witness.as_ref().map(ToString::to_string),
            bindings: r.bindings.iter().map(|(k, v)| (k.as_str(), v.to_string())).collect(),
            duration_ms: if timings { r.duration.as_millis() } else { 0 },
        })
        .collect();
    let doc = JsonReport {
        version: 1,
        seed,
        checks,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
    out.push('\n');
    out
}

pub fn render_text(report: &Report, timings: bool) -> String {
    let mut out = String::new();
    for r in &report.results {
        let _ = write!(out, "{:<12} {}", r.status.as_str(), r.check_id);
        if !r.bindings.is_empty() {
            let b: Vec<String> = r.bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, " [{}]", b.join(", "));
        }
        if timings {
            let _ = write!(out, " ({} ms)", r.duration.as_millis());
        }
        out.push('\n');
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "             {w}");
        }
    }
    let _ = writeln!(
        out,
        "{} {}: {} pass, {} fail, {} discrepancy",
        report.results.len(),
        if report.results.len() == 1 { "check" } else { "checks" },
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Discrepancy)
    );
    out
}

pub fn render_list() -> String {
    let width = catalog().iter().map(|c| c.id.len()).max().unwrap_or(0);
    catalog()
        .iter()
        .map(|c| format!("{:<width$}  {}\n", c.id, c.locus))
        .collect()
}

/// Runs a parsed command, returning what to print and the exit code.
pub fn execute(cli: &Cli) -> (String, u8) {
    match &cli.command {
        Command::List => (render_list(), EXIT_PASS),
        Command::Eval { expr } => match parse_poly(expr) {
            Ok(p) => (format!("{p}\n"), EXIT_PASS),
            Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
        },
        Command::Run(args) => match run_options(args) {
            Ok(opts) => {
                let report = run_all(args.filter.as_deref(), &opts);
                let text = match args.report {
                    Format::Text => render_text(&report, args.timings),
                    Format::Json => render_json(&report, args.seed, args.timings),
                };
                (text, exit_code(&report))
            }
            Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
        },
    }
}

/// Entry point shared by the binary and tests.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(EXIT_USAGE));
        }
    };
    let (text, code) = execute(&cli);
    if code == EXIT_USAGE {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_parse_exactly() {
        let (n, v) = parse_binding("lam=-3/4").unwrap();
        assert_eq!(n, "lam");
        assert_eq!(v, "-3/4".parse::<Rat>().unwrap());
        assert_eq!(parse_binding("s=2").unwrap().1, Rat::from_integer(2.into()));
        for bad in ["s", "s=", "s=1/0", "s=0.5", "s=1/-2", "=1", "1s=2", "s=--1"] {
            assert!(parse_binding(bad).is_err(), "{bad}");
        }
    }

    fn run_args(filter: Option<&str>, binds: &[&str]) -> RunArgs {
        RunArgs {
            filter: filter.map(str::to_string),
            bindings: binds.iter().map(|b| parse_binding(b).unwrap()).collect(),
            report: Format::Text,
            seed: 0,
            trials: 100,
            timings: false,
        }
    }

    #[test]
    fn binding_validation() {
        assert!(run_options(&run_args(Some("aut.case1"), &["lam=2"])).is_ok());
        assert!(matches!(
            run_options(&run_args(None, &["w=1"])),
            Err(UsageError::UnknownParameter(_))
        ));
        assert!(matches!(
            run_options(&run_args(Some("smooth."), &["lam=1"])),
            Err(UsageError::Forbidden { .. })
        ));
        assert!(matches!(
            run_options(&run_args(Some("gen."), &["s=1"])),
            Err(UsageError::Unused(_))
        ));
        assert!(matches!(
            run_options(&run_args(Some("aut.case1"), &["lam=1", "lam=2"])),
            Err(UsageError::Duplicate(_))
        ));
        assert!(matches!(
            run_options(&run_args(Some("zzz"), &[])),
            Err(UsageError::EmptySelection(_))
        ));
    }

    #[test]
    fn eval_prints_canonical_form() {
        assert_eq!(parse_poly("x3^2 - x2*x4").unwrap().to_string(), "-x2*x4 + x3^2");
        assert_eq!(parse_poly("0").unwrap().to_string(), "0");
        assert_eq!(parse_poly("3x2^2").unwrap_err().column(), 2);
    }
}
