//! Deterministic table rendering: fixed column set, fixed significand
//! width, blank cells for absent values.

use std::io::Write;
use std::path::Path;

use primelab_core::report::format_significant;

use crate::config::TableFormat;

/// One rendered table row; cells are already formatted.
pub struct Row {
    pub x: String,
    pub raw: String,
    pub normalized: String,
    pub predicted: String,
    pub deviation: String,
}

/// Builds a row from numeric values; `None` renders as an empty cell.
pub fn make_row(
    x: impl ToString,
    raw: f64,
    normalized: f64,
    predicted: Option<f64>,
    deviation: Option<f64>,
) -> Row {
    Row {
        x: x.to_string(),
        raw: format_significant(raw),
        normalized: format_significant(normalized),
        predicted: predicted.map(format_significant).unwrap_or_default(),
        deviation: deviation.map(format_significant).unwrap_or_default(),
    }
}

/// Renders the header plus rows with the requested delimiter.
pub fn render(rows: &[Row], format: TableFormat) -> String {
    let sep = match format {
        TableFormat::Csv => ',',
        TableFormat::Tsv => '\t',
    };
    let mut out = String::new();
    out.push_str(&format!(
        "x{sep}raw{sep}normalized{sep}predicted{sep}deviation\n"
    ));
    for row in rows {
        out.push_str(&format!(
            "{}{sep}{}{sep}{}{sep}{}{sep}{}\n",
            row.x, row.raw, row.normalized, row.predicted, row.deviation
        ));
    }
    out
}

/// Writes the table to the file when `--output` was given, otherwise to
/// standard output.
pub fn emit(table: &str, output: Option<&Path>) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, table),
        None => std::io::stdout().write_all(table.as_bytes()),
    }
}
