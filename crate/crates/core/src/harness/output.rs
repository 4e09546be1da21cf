//! CSV output of result tables and traces.

use std::io::Write;
use std::path::Path;

use crate::engine::{ConsensusTrace, MethodKind};
use crate::error::Result;

use super::config::ParamCell;
use super::experiment::{ResultRow, ResultTable};

pub const TABLE_HEADER: [&str; 8] = [
    "method",
    "weights",
    "lambda_m",
    "lambda_M",
    "tol",
    "mean_rounds",
    "n_diverged",
    "n_trials",
];

fn param_columns(row: &ResultRow) -> (String, String) {
    match row.cell.params {
        ParamCell::None => (String::new(), String::new()),
        ParamCell::Optimal if row.cell.method == MethodKind::FixedGain => (String::new(), "optimal".into()),
        ParamCell::Optimal => ("optimal".into(), "optimal".into()),
        ParamCell::Interval(p) => (p.lambda_m().to_string(), p.lambda_max().to_string()),
        ParamCell::GainFrom(l) => (String::new(), l.to_string()),
    }
}

/// `inf` when no trial met the tolerance and some diverged, `>=<max_rounds>`
/// when none met it and none diverged.
fn mean_column(row: &ResultRow, max_rounds: usize) -> String {
    match row.mean_rounds {
        Some(m) => m.to_string(),
        None if row.n_diverged > 0 => "inf".into(),
        None => format!(">={max_rounds}"),
    }
}

pub fn write_table<W: Write>(table: &ResultTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TABLE_HEADER)?;
    for row in &table.rows {
        let (lo, hi) = param_columns(row);
        w.write_record([
            row.cell.method.as_str().to_string(),
            row.cell.weights.as_str().to_string(),
            lo,
            hi,
            row.tol.to_string(),
            mean_column(row, table.max_rounds),
            row.n_diverged.to_string(),
            row.n_trials.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes one row per cell and tolerance.
pub fn emit_csv(table: &ResultTable, path: impl AsRef<Path>) -> Result<()> {
    write_table(table, std::fs::File::create(path)?)
}

/// `round,error` for every round, plus one column per agent when the trace
/// kept its states.
pub fn emit_trace_plotdata(trace: &ConsensusTrace, path: impl AsRef<Path>) -> Result<()> {
    trace.write_csv_file(path)
}
