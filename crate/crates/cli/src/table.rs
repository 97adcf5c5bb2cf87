//! Tabular output shared by every subcommand.
//!
//! CSV: header row, comma separator, LF endings. JSON: `{"meta": {...}, "rows": [[...], ...]}`.
//! Reals are written in their shortest round-trip form, so CSV and JSON carry
//! bit-identical values.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

/// One table cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    fn sort_key(&self) -> f64 {
        match *self {
            Cell::Int(i) => i as f64,
            Cell::Real(x) => x,
        }
    }

    fn to_csv(self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format_real(x),
        }
    }

    fn to_json(self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            // serde_json maps non-finite values to null
            Cell::Real(x) => json!(x),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

/// Shortest decimal string that parses back to the same `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub sites: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observable: Option<String>,
    pub columns: Vec<String>,
    pub notes: Vec<String>,
}

/// Rows ordered by their first column, no duplicate keys.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub meta: Meta,
    pub rows: Vec<Vec<Cell>>,
}

impl SweepTable {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            meta: Meta {
                command: command.to_string(),
                n: None,
                sites: Vec::new(),
                observable: None,
                columns: columns.iter().map(|c| c.to_string()).collect(),
                notes: Vec::new(),
            },
            rows: Vec::new(),
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.meta.n = Some(n);
        self
    }

    pub fn with_sites(mut self, sites: &[usize]) -> Self {
        self.meta.sites = sites.to_vec();
        self
    }

    pub fn with_observable(mut self, observable: &str) -> Self {
        self.meta.observable = Some(observable.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.meta.notes.push(note.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.meta.columns.len());
        self.rows.push(row);
    }

    /// Sorts by the first column and drops rows repeating an earlier key.
    pub fn finish(mut self) -> Self {
        self.rows
            .sort_by(|a, b| a[0].sort_key().total_cmp(&b[0].sort_key()));
        self.rows
            .dedup_by(|a, b| a[0].sort_key() == b[0].sort_key());
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.meta.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.to_csv()).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| c.to_json()).collect()))
            .collect();
        let doc = json!({ "meta": self.meta, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}
