//! Tabular plot-data output: CSV with `#` metadata lines, or JSON.
//!
//! CSV numbers carry 17 significant digits so a parse recovers the exact
//! f64. JSON mirrors the CSV: a `meta` object plus one object per row keyed
//! by column name; non-finite numbers become `null`.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (csv|json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Column-oriented output with ordered metadata.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub meta: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "NaN".to_string()
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format_number(*v),
        Cell::Text(s) => s.clone(),
    }
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Num(v) => serde_json::Number::from_f64(*v)
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Cell::Text(s) => Value::String(s.clone()),
    }
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta_value(&self, key: &str) -> Option<&Cell> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(
            self.rows
                .iter()
                .map(|r| r[i].as_f64().unwrap_or(f64::NAN))
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={}", cell_text(v));
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(cell_text).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut meta = Map::new();
        for (k, v) in &self.meta {
            meta.insert(k.clone(), cell_json(v));
        }
        let samples: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, c) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), cell_json(c));
                }
                Value::Object(obj)
            })
            .collect();
        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(meta));
        root.insert(
            "columns".into(),
            Value::Array(self.columns.iter().cloned().map(Value::String).collect()),
        );
        root.insert("samples".into(), Value::Array(samples));
        Value::Object(root)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => Ok(self.to_csv()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.to_json())? + "\n"),
        }
    }

    pub fn write_to<W: Write>(&self, mut w: W, format: Format) -> Result<()> {
        w.write_all(self.render(format)?.as_bytes())?;
        Ok(())
    }

    /// Parses the CSV produced by [`Table::to_csv`]. Cells that parse as
    /// numbers (including `NaN`) become [`Cell::Num`].
    pub fn parse_csv(text: &str) -> Result<Self> {
        let parse_cell = |s: &str| match s.parse::<f64>() {
            Ok(v) => Cell::Num(v),
            Err(_) => Cell::Text(s.to_string()),
        };
        let mut table = Table::default();
        let mut have_header = false;
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix('#') {
                let (k, v) = rest
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| Error::Config(format!("bad metadata line {line:?}")))?;
                table.meta.push((k.to_string(), parse_cell(v)));
            } else if line.trim().is_empty() {
                continue;
            } else if !have_header {
                table.columns = line.split(',').map(str::to_string).collect();
                have_header = true;
            } else {
                let row: Vec<Cell> = line.split(',').map(parse_cell).collect();
                if row.len() != table.columns.len() {
                    return Err(Error::Config(format!(
                        "row has {} cells, header has {}",
                        row.len(),
                        table.columns.len()
                    )));
                }
                table.rows.push(row);
            }
        }
        if !have_header {
            return Err(Error::Config("missing column header".into()));
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_table(values: &[f64]) -> Table {
        let mut t = Table::new(&["a", "b", "flag"]);
        t.meta("n", 2.0).meta("sense", "counterclockwise");
        for pair in values.chunks(2) {
            let b = pair.get(1).copied().unwrap_or(0.0);
            t.push_row(vec![pair[0].into(), b.into(), "ok".into()]);
        }
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample_table(&[1.5, -2.0]).to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# n=2.0000000000000000e0");
        assert_eq!(lines[1], "# sense=counterclockwise");
        assert_eq!(lines[2], "a,b,flag");
        assert_eq!(lines[3], "1.5000000000000000e0,-2.0000000000000000e0,ok");
    }

    #[test]
    fn json_mirrors_columns_and_nulls_nan() {
        let mut t = Table::new(&["x"]);
        t.push_row(vec![f64::NAN.into()]);
        t.push_row(vec![3.0.into()]);
        let j = t.to_json();
        assert!(j["samples"][0]["x"].is_null());
        assert_eq!(j["samples"][1]["x"].as_f64(), Some(3.0));
        assert_eq!(j["columns"][0], "x");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip_is_exact(values in prop::collection::vec(-1e30f64..1e30, 2..20)) {
            let table = sample_table(&values);
            let parsed = Table::parse_csv(&table.to_csv()).unwrap();
            prop_assert_eq!(parsed, table);
        }
    }
}
