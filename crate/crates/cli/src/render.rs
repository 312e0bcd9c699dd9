//! Number formatting and text / csv / json rendering of rows.

use std::str::FromStr;

use gft_core::{Error, Result};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Usage(format!(
                "unknown format {s:?}, expected text, csv or json"
            ))),
        }
    }
}

/// Round to 15 significant digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

/// Shortest text that reads back as `round15(v)`; exponent form outside
/// [1e−6, 1e15).
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round15(v);
    let a = r.abs();
    if a != 0.0 && !(1e-6..1e15).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// JSON number of `round15(v)`; non-finite values become null.
pub fn json_num(v: f64) -> Value {
    serde_json::Number::from_f64(round15(v)).map_or(Value::Null, Value::Number)
}

/// A table with numeric cells.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn render(&self, fmt: OutputFormat) -> String {
        match fmt {
            OutputFormat::Text => self.text(),
            OutputFormat::Csv => {
                let cells = self
                    .rows
                    .iter()
                    .map(|row| row.iter().map(|&v| fmt_num(v)).collect());
                csv_text(&self.header, cells)
            }
            OutputFormat::Json => {
                let rows = self.rows.iter().map(|row| self.object(row)).collect();
                json_text(&Value::Array(rows))
            }
        }
    }

    fn object(&self, row: &[f64]) -> Value {
        let map: Map<String, Value> = self
            .header
            .iter()
            .zip(row)
            .map(|(h, &v)| (h.clone(), json_num(v)))
            .collect();
        Value::Object(map)
    }

    fn text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&v| fmt_num(v)).collect())
            .collect();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |items: &[String]| {
            let padded: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            padded.join("  ")
        };
        let mut out = line(&self.header);
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

pub fn csv_text(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    // writing into a Vec cannot fail
    w.write_record(header).expect("csv header");
    for row in rows {
        w.write_record(&row).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}
