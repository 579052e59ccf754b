//! Report tables written as CSV or JSON.

use super::config::Format;
use crate::error::{Error, Result};
use serde_json::{Map, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Columns leading every row.
pub const PREFIX: [&str; 5] = ["tool_version", "command", "psi_hash", "seed", "method"];

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
    Null,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => x.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) if x.is_finite() => Value::from(*x),
            Cell::Float(x) => Value::String(x.to_string()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Null => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(i64::from(x))
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Null, Into::into)
    }
}

/// Builds a row from heterogeneous values.
#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($crate::cli::Cell::from($x)),*] };
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    command: String,
    seed: Option<u64>,
}

impl Table {
    pub fn new(name: &str, command: &str, seed: Option<u64>, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: PREFIX.iter().chain(columns).map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            command: command.to_string(),
            seed,
        }
    }

    /// Appends a row; `values` follow the table's own columns.
    pub fn push(&mut self, psi_hash: &str, method: &str, values: Vec<Cell>) {
        assert_eq!(values.len() + PREFIX.len(), self.columns.len(), "row width for {}", self.name);
        let mut row: Vec<Cell> = vec![
            TOOL_VERSION.into(),
            self.command.as_str().into(),
            psi_hash.into(),
            self.seed.map_or(Cell::Null, |s| Cell::Int(s as i64)),
            method.into(),
        ];
        row.extend(values);
        self.rows.push(row);
    }

    /// Index of `column`, for reading values back.
    pub fn column(&self, column: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == column)
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(&self.columns).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::text)).map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect::<Map<_, _>>()))
                .collect(),
        )
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.to_json_value()).map_err(|e| Error::Io(e.into()))?;
                out.push(b'\n');
                Ok(out)
            }
        }
    }

    /// Writes `<dir>/<name>.<csv|json>` and returns its path.
    pub fn write(&self, dir: &Path, format: Format) -> Result<PathBuf> {
        let ext = match format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let path = dir.join(format!("{}.{ext}", self.name));
        std::fs::write(&path, self.render(format)?)?;
        Ok(path)
    }
}

/// Writes every table into `dir`, or to `out` as one stream when `dir` is `None`.
pub fn emit(tables: &[Table], dir: Option<&Path>, format: Format, out: &mut dyn Write) -> Result<Vec<PathBuf>> {
    match dir {
        Some(d) => {
            std::fs::create_dir_all(d)?;
            tables.iter().map(|t| t.write(d, format)).collect()
        }
        None => {
            match format {
                Format::Csv => {
                    for t in tables {
                        writeln!(out, "# {}", t.name)?;
                        out.write_all(&t.to_csv()?)?;
                        writeln!(out)?;
                    }
                }
                Format::Json => {
                    let all: Map<String, Value> = tables.iter().map(|t| (t.name.clone(), t.to_json_value())).collect();
                    serde_json::to_writer_pretty(&mut *out, &all).map_err(|e| Error::Io(e.into()))?;
                    writeln!(out)?;
                }
            }
            Ok(Vec::new())
        }
    }
}
