//! CSV and JSON writers. Numbers are written with 17 significant digits in
//! CSV and as shortest round-trip decimals in JSON, so equal inputs give
//! byte-identical files.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Flag(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Flag(b)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Value::from(*x),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Flag(b) => Value::from(*b),
        }
    }
}

pub type Row = Vec<Cell>;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
}

#[derive(Serialize)]
struct Document<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    params: &'a RunConfig,
    columns: &'a [&'static str],
    rows: Vec<Vec<Value>>,
}

pub fn header_line(cfg: &RunConfig) -> Result<String, CliError> {
    let params = serde_json::to_string(cfg).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(format!(
        "# mirror-radiance v{} cmd={} params={params}",
        mirror_radiance::VERSION,
        cfg.command.name()
    ))
}

pub fn write_table(cfg: &RunConfig, table: &Table, out: &mut dyn Write) -> Result<(), CliError> {
    match cfg.format {
        Format::Csv => {
            writeln!(out, "{}", header_line(cfg)?)?;
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            w.write_record(&table.columns).map_err(csv_err)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::csv)).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = Document {
                tool: "mirror-radiance",
                version: mirror_radiance::VERSION,
                command: cfg.command.name(),
                params: cfg,
                columns: &table.columns,
                rows: table.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect(),
            };
            serde_json::to_writer(&mut *out, &doc).map_err(|e| CliError::Io(e.into()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.into())
}
