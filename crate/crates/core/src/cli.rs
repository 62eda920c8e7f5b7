//! Command-line front end.
//!
//! Exit codes: 0 when everything requested succeeded or passed, 1 when a
//! verification failed (or a computation errored), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::io::{matrix_to_csv, matrix_to_json_string, matrix_to_latex, representation_to_json};
use crate::matrices::NamedMatrix;
use crate::reps::{irrep, Spin};
use crate::scalar::{parse_rational, Bindings, Scalar, Var};
use crate::suites::{run_all, run_suite, Suite, SuiteOptions};
use crate::twist::phi::{solve_phi, MAX_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qosp",
    version,
    about = "Exact matrix constructions for the super-jordanian osp(1|2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a named matrix or the matrices of an irreducible representation.
    Emit(EmitArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Solve order by order for the super-twist series.
    SolvePhi(SolveArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["matrix", "rep"]))]
struct EmitArgs {
    #[arg(long, value_parser = parse_matrix)]
    matrix: Option<NamedMatrix>,
    /// Spin of an irreducible representation (1/2, 1, 3/2, 2); always JSON.
    #[arg(long, value_parser = parse_spin)]
    rep: Option<Spin>,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
    format: MatrixFormat,
    /// Exact substitution `var=rational` for s, theta or xi. Repeatable.
    #[arg(long = "set", value_parser = parse_binding)]
    set: Vec<(Var, Scalar)>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// all, golden, ybe, triangular, factorization, frt, cocycle, hopf or intertwine.
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: SuiteChoice,
    #[arg(long, value_delimiter = ',', value_parser = parse_spin, default_value = "1/2,1")]
    spins: Vec<Spin>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=MAX_ORDER as i64))]
    order: u32,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Also write the JSON report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug)]
enum SuiteChoice {
    All,
    One(Suite),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=MAX_ORDER as i64))]
    order: u32,
    /// Representation pairs `j1:j2`, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair, default_value = "1:1/2,1:1")]
    pairs: Vec<(Spin, Spin)>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_matrix(s: &str) -> std::result::Result<NamedMatrix, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_spin(s: &str) -> std::result::Result<Spin, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<SuiteChoice, String> {
    if s == "all" {
        return Ok(SuiteChoice::All);
    }
    s.parse()
        .map(SuiteChoice::One)
        .map_err(|e: Error| e.to_string())
}

fn parse_pair(s: &str) -> std::result::Result<(Spin, Spin), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected j1:j2, got '{s}'"))?;
    Ok((parse_spin(a)?, parse_spin(b)?))
}

fn parse_binding(s: &str) -> std::result::Result<(Var, Scalar), String> {
    let (v, r) = s
        .split_once('=')
        .ok_or_else(|| format!("expected var=rational, got '{s}'"))?;
    let var: Var = v.trim().parse().map_err(|e: Error| e.to_string())?;
    let value = parse_rational(r.trim()).map_err(|e| e.to_string())?;
    Ok((var, Scalar::from_rational(value)))
}

fn write_output(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit(args: &EmitArgs, out: &mut dyn Write) -> Result<i32> {
    let bindings: Bindings = args.set.iter().cloned().collect();
    let text = if let Some(spin) = args.rep {
        if !bindings.is_empty() {
            return Err(Error::InvalidArgument(
                "--set applies to --matrix only".into(),
            ));
        }
        let r = irrep(spin)?;
        format!(
            "{}\n",
            serde_json::to_string_pretty(&representation_to_json(&r)).expect("json")
        )
    } else {
        let name = args.matrix.expect("clap enforces --matrix or --rep");
        let m = name.build()?.substitute(&bindings)?;
        match args.format {
            MatrixFormat::Json => matrix_to_json_string(&m),
            MatrixFormat::Csv => matrix_to_csv(&m),
            MatrixFormat::Latex => matrix_to_latex(&m),
        }
    };
    write_output(&args.out, &text, out)?;
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = SuiteOptions {
        spins: args.spins.clone(),
        order: args.order,
        ..SuiteOptions::default()
    };
    let report = match args.suite {
        SuiteChoice::All => run_all(&opts),
        SuiteChoice::One(s) => run_suite(s, &opts),
    };
    let json = format!("{}\n", serde_json::to_string_pretty(&report).expect("json"));
    if let Some(p) = &args.json {
        std::fs::write(p, &json)?;
    }
    let text = match args.format {
        ReportFormat::Text => report.render_text(),
        ReportFormat::Json => json,
    };
    write_output(&args.out, &text, out)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let sol = solve_phi(args.order, &args.pairs)?;
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(&sol.to_json()).expect("json")
    );
    write_output(&args.out, &text, out)?;
    Ok(if sol.passed() { EXIT_OK } else { EXIT_FAIL })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Emit(a) => emit(a, out),
        Command::Verify(a) => verify(a, out),
        Command::SolvePhi(a) => solve(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::Parse(_) | Error::UnsupportedSpin(_) => {
                    EXIT_USAGE
                }
                _ => EXIT_FAIL,
            }
        }
    }
}
