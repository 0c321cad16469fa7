//! Row output as CSV or JSON lines with fixed precision.

use std::io::{self, Write};

use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Text(String),
    Missing,
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v as i64)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

/// One output record; the column order is part of the format.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputRow {
    pub columns: Vec<(&'static str, Value)>,
}

impl OutputRow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &'static str, value: impl Into<Value>) -> Self {
        self.columns.push((name, value.into()));
        self
    }

    pub fn header(&self) -> Vec<&'static str> {
        self.columns.iter().map(|(n, _)| *n).collect()
    }
}

/// Fixed-point rendering; `-0.000` is printed without its sign.
pub fn format_real(v: f64, precision: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.precision$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn cell(v: &Value, precision: usize) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Real(x) => format_real(*x, precision),
        Value::Text(t) => t.clone(),
        Value::Missing => String::new(),
    }
}

fn json_value(v: &Value, precision: usize) -> Json {
    match v {
        Value::Int(i) => Json::from(*i),
        Value::Real(x) => format_real(*x, precision)
            .parse::<f64>()
            .ok()
            .and_then(Number::from_f64)
            .map_or(Json::Null, Json::Number),
        Value::Text(t) => Json::String(t.clone()),
        Value::Missing => Json::Null,
    }
}

pub fn json_object(row: &OutputRow, precision: usize) -> Json {
    let map: Map<String, Json> = row
        .columns
        .iter()
        .map(|(n, v)| (n.to_string(), json_value(v, precision)))
        .collect();
    Json::Object(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Writes rows as CSV (header first, LF line ends) or as one JSON object per
/// line.
pub fn write_rows<W: Write>(
    out: &mut W,
    rows: &[OutputRow],
    format: Format,
    precision: usize,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            let Some(first) = rows.first() else {
                return Ok(());
            };
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut *out);
            w.write_record(first.header())?;
            for row in rows {
                w.write_record(row.columns.iter().map(|(_, v)| cell(v, precision)))?;
            }
            w.flush()?;
        }
        Format::Json => {
            for row in rows {
                writeln!(out, "{}", json_object(row, precision))?;
            }
        }
    }
    Ok(())
}
