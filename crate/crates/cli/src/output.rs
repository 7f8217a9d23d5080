use std::path::Path;

use serde_json::Value;

use crate::{CliError, Format};

/// A command result: the JSON document, and for list-like results a table
/// with a fixed column order for CSV output.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn json(json: Value) -> Self {
        Self { json, table: None }
    }
}

/// Canonical text form. JSON objects are written with sorted keys.
pub fn emit(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = report.table.as_ref().ok_or_else(|| {
                CliError::Invalid("this command has no CSV form; use --format json".into())
            })?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::Invalid(e.to_string());
            w.write_record(&table.header).map_err(csv_err)?;
            for r in &table.rows {
                w.write_record(r).map_err(csv_err)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Invalid(e.to_string()))
        }
    }
}

pub fn write(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
