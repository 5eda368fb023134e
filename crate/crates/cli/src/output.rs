//! Report serialisation: JSON, CSV and plain text.

use std::io::Write;

use clap::ValueEnum;
use qkernel::verify::{format_complex, format_real, VerificationReport};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub const CSV_HEADER: [&str; 11] =
    ["check_id", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "nodes_used", "pass", "runtime_ms", "diagnostic"];

fn params_cell(r: &VerificationReport) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn write_reports(reports: &[VerificationReport], format: Format, mut out: impl Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, reports).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(CSV_HEADER).map_err(io)?;
            for r in reports {
                w.write_record([
                    r.check_id.clone(),
                    params_cell(r),
                    format_complex(r.lhs),
                    format_complex(r.rhs),
                    format_real(r.abs_err),
                    format_real(r.rel_err),
                    format_real(r.tol),
                    r.nodes_used.to_string(),
                    r.pass.to_string(),
                    format_real(r.runtime_ms),
                    r.diagnostic.clone().unwrap_or_default(),
                ])
                .map_err(io)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in reports {
                writeln!(out, "{}", r.summary_line())?;
            }
        }
    }
    Ok(())
}
