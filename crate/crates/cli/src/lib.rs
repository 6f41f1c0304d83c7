//! Command-line front end for `metproj-core`.
//!
//! ```text
//! metproj ball eval   --input req.json
//! metproj soc eval    --input -
//! metproj verify all  --seed 42 --report report.json
//! metproj examples
//! ```
//!
//! Exit codes: 0 on success, 1 when a verification property fails, 2 for
//! malformed input or invalid arguments (with a one-line diagnostic on stderr).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub mod eval;
pub mod golden;
pub mod suite;
pub mod wire;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed JSON request: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Core(#[from] metproj_core::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Parser)]
#[command(name = "metproj", version, about = "Projections onto balls and second-order cones, with derivative checks")]
pub struct Cli {
    /// Request file for `eval`; `-` or absent reads stdin.
    #[arg(long, global = true, value_name = "FILE|-")]
    pub input: Option<String>,
    /// Region-classification tolerance (overrides the request's own field).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Central-difference step used by `verify`.
    #[arg(long = "fd-step", global = true, default_value_t = 1e-6)]
    pub fd_step: f64,
    /// Write JSON output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed ball B(c, r).
    Ball {
        #[command(subcommand)]
        action: EvalAction,
    },
    /// Second-order cone in R^m.
    Soc {
        #[command(subcommand)]
        action: EvalAction,
    },
    /// Run the seeded property suites.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Print the worked examples as JSON.
    Examples,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum EvalAction {
    /// Projection, region and derivatives at one point.
    Eval,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum VerifyTarget {
    Ball,
    Soc,
    All,
}

fn read_request(input: Option<&str>, stdin: &mut dyn Read) -> Result<wire::Request, CliError> {
    let mut text = String::new();
    match input {
        None | Some("-") => {
            stdin.read_to_string(&mut text)?;
        }
        Some(path) => {
            text = std::fs::read_to_string(path)?;
        }
    }
    Ok(serde_json::from_str(&text)?)
}

fn emit(value: &impl serde::Serialize, report: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match report {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn check_tolerance(tol: Option<f64>) -> Result<(), CliError> {
    match tol {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            Err(CliError::Invalid(format!("tolerance must be finite and non-negative, got {t}")))
        }
        _ => Ok(()),
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32, CliError> {
    check_tolerance(cli.tolerance)?;
    match cli.command {
        Command::Ball { action: EvalAction::Eval } | Command::Soc { action: EvalAction::Eval } => {
            let req = read_request(cli.input.as_deref(), stdin)?;
            check_tolerance(req.tolerance)?;
            let resp = match cli.command {
                Command::Ball { .. } => eval::eval_ball(&req, cli.tolerance)?,
                _ => eval::eval_soc(&req, cli.tolerance)?,
            };
            emit(&resp, cli.report.as_ref(), stdout)?;
            Ok(0)
        }
        Command::Verify { target } => {
            metproj_core::verify::FdConfig::central(cli.fd_step)?;
            let cfg = suite::SuiteConfig {
                seed: cli.seed,
                fd_step: cli.fd_step,
                tolerance: cli.tolerance.unwrap_or(eval::DEFAULT_TOLERANCE),
            };
            let suites = match target {
                VerifyTarget::Ball => vec![suite::run_ball(&cfg)?],
                VerifyTarget::Soc => vec![suite::run_soc(&cfg)?],
                VerifyTarget::All => vec![suite::run_ball(&cfg)?, suite::run_soc(&cfg)?],
            };
            let report = suite::Report::new(&cfg, suites);
            emit(&report, cli.report.as_ref(), stdout)?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Examples => {
            emit(&golden::examples()?, cli.report.as_ref(), stdout)?;
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let line = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "error: {line}");
            2
        }
    }
}
