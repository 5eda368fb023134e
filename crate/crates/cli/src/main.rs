//! `qkernel`: evaluate q-series functions, run identity checks and suites.
//!
//! Exit status: 0 when everything passes, 1 on a failed check or a numeric
//! error (pole, non-convergence), 2 on usage and configuration errors.

mod args;
mod error;
mod eval;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qkernel::verify::{run_suite, Check, CheckId, SuiteConfig, TolerancePolicy};
use qkernel::ContextSettings;
use serde_json::Value;

use args::NamedArgs;
use error::CliError;
use output::Format;

/// Environment variable overriding the default tolerance of every check.
const TOL_ENV: &str = "QKERNEL_TOL";

#[derive(Debug, Parser)]
#[command(name = "qkernel", version, about = "q-series kernel and identity verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a library function and print its value.
    ///
    /// Targets: qpoch, phi, wseries, C, Cg, Phi, H, T, h, omega_b, omega_ab,
    /// jackson. Arguments are `--name value`; complex values are written
    /// "re" or "re,im" and lists are ';'-separated.
    Eval {
        target: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "--NAME VALUE")]
        args: Vec<String>,
    },
    /// Run one check and print its JSON report.
    ///
    /// The check parameters are `--name value` pairs matching the check
    /// (e.g. `check thm-1.1 --m 3 --n 3 --beta 0.6 --q 0.3`); `--tol` sets
    /// the tolerance.
    Check {
        id: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "--NAME VALUE")]
        args: Vec<String>,
    },
    /// Run a suite of checks (the standard suite unless --config is given).
    Suite {
        /// JSON suite configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Restrict to these check ids (comma-separated or repeated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tolerance for every check.
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn env_tolerance() -> Result<Option<f64>, CliError> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t >= 0.0)
            .map(Some)
            .ok_or_else(|| CliError::usage(format!("{TOL_ENV}={v:?} is not a tolerance"))),
    }
}

fn policy() -> Result<TolerancePolicy, CliError> {
    Ok(env_tolerance()?.map(TolerancePolicy::uniform).unwrap_or_default())
}

fn check_tolerance(tol: Option<f64>) -> Result<Option<f64>, CliError> {
    match tol {
        Some(t) if !(t >= 0.0) => Err(CliError::usage(format!("--tol must be non-negative, got {t}"))),
        t => Ok(t),
    }
}

fn cmd_eval(target: &str, raw: &[String]) -> Result<(), CliError> {
    let mut args = NamedArgs::parse(raw)?;
    if !eval::TARGETS.contains(&target) {
        return Err(CliError::usage(format!("unknown eval target {target:?}; expected one of {}", eval::TARGETS.join(", "))));
    }
    let value = eval::evaluate(target, &mut args)?;
    args.finish()?;
    println!("{}", eval::format_value(value));
    Ok(())
}

fn cmd_check(id: &str, raw: &[String]) -> Result<bool, CliError> {
    let id: CheckId = id.parse().map_err(|e: qkernel::QError| CliError::usage(e.to_string()))?;
    let mut args = NamedArgs::parse(raw)?;
    let tol = check_tolerance(args.parsed_opt::<f64>("tol")?)?;
    let mut object = args.into_json()?;
    object.insert("check".to_string(), Value::String(id.as_str().to_string()));
    let check: Check = serde_json::from_value(Value::Object(object)).map_err(|e| CliError::usage(format!("{id}: {e}")))?;
    let tol = tol.unwrap_or(policy()?.for_check(id));
    let report = check.run(&ContextSettings::default(), tol);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, &report).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out)?;
    if let Some(d) = &report.diagnostic {
        eprintln!("diagnostic: {d}");
    }
    Ok(report.pass)
}

fn cmd_suite(config: Option<PathBuf>, only: &[String], format: Format, out: Option<PathBuf>, tol: Option<f64>) -> Result<bool, CliError> {
    let mut cfg = match config {
        None => SuiteConfig { tolerances: policy()?, ..SuiteConfig::standard() },
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<SuiteConfig>(&text).map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))?
        }
    };
    if !only.is_empty() {
        let ids = only
            .iter()
            .map(|s| s.trim().parse::<CheckId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::usage(e.to_string()))?;
        cfg = cfg.only(&ids);
    }
    if let Some(t) = check_tolerance(tol)? {
        cfg.tol = Some(t);
    }
    let result = run_suite(&cfg);
    match out {
        None => {
            let stdout = io::stdout();
            output::write_reports(&result.reports, format, stdout.lock())?;
        }
        Some(path) => {
            let file = File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            output::write_reports(&result.reports, format, &mut w)?;
            w.flush()?;
        }
    }
    eprintln!("{}", result.summary());
    Ok(result.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Eval { target, args } => cmd_eval(&target, &args).map(|_| true),
        Command::Check { id, args } => cmd_check(&id, &args),
        Command::Suite { config, only, format, out, tol } => cmd_suite(config, &only, format, out, tol),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qkernel: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
