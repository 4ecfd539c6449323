//! Rendering of command results as an aligned table, CSV, or JSON.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "pebblekit/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// A command result. `headers`/`rows` drive the human and CSV forms; `body`
/// is the JSON object (the schema and command fields are added on output).
#[derive(Debug, Default)]
pub struct Report {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub body: Map<String, Value>,
    /// Extra lines under the human table.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(headers: &[&'static str]) -> Self {
        Report { headers: headers.to_vec(), ..Report::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.body.insert(key.to_string(), value.into());
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }
}

pub fn render(command: &str, report: &Report, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Human => {
            write_table(&report.headers, &report.rows, out)?;
            for line in &report.notes {
                writeln!(out, "{line}")?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&report.headers)?;
            for row in &report.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("schema".into(), SCHEMA.into());
            obj.insert("command".into(), command.into());
            obj.extend(report.body.clone());
            serde_json::to_writer_pretty(&mut *out, &Value::Object(obj))?;
            writeln!(out)
        }
    }
}

fn write_table(headers: &[&str], rows: &[Vec<String>], out: &mut impl Write) -> io::Result<()> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(headers.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
