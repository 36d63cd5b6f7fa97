//! Tabular output shared by every CLI subcommand. Complex-valued columns are
//! emitted as paired `name_re,name_im` columns in CSV and as single `[re, im]`
//! array cells in JSON; missing values are empty (CSV) or null (JSON).

use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Real,
    Int,
    Text,
    Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
    Complex(Complex64),
    Empty,
}

/// −0.0 prints as 0 in tables.
fn unsigned_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Real(v) => json!(unsigned_zero(*v)),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Complex(z) => json!([unsigned_zero(z.re), unsigned_zero(z.im)]),
            Cell::Empty => Value::Null,
        }
    }

    fn push_csv(&self, fields: &mut Vec<String>, kind: ColumnKind) {
        match self {
            Cell::Real(v) => fields.push(format!("{}", unsigned_zero(*v))),
            Cell::Int(v) => fields.push(format!("{v}")),
            Cell::Text(s) => fields.push(s.clone()),
            Cell::Complex(z) => {
                fields.push(format!("{}", unsigned_zero(z.re)));
                fields.push(format!("{}", unsigned_zero(z.im)));
            }
            Cell::Empty => {
                fields.push(String::new());
                if kind == ColumnKind::Complex {
                    fields.push(String::new());
                }
            }
        }
    }
}

/// Column-named rows plus key=value header metadata.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputTable {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<(String, ColumnKind)>,
    pub rows: Vec<Vec<Cell>>,
}

impl OutputTable {
    pub fn new(columns: &[(&str, ColumnKind)]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(n, _)| n == name)
    }

    /// CSV with `# key=value` comment lines; a complex column `k` expands to
    /// the header pair `k_re,k_im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let mut header = Vec::new();
        for (name, kind) in &self.columns {
            if *kind == ColumnKind::Complex {
                header.push(format!("{name}_re"));
                header.push(format!("{name}_im"));
            } else {
                header.push(name.clone());
            }
        }
        let _ = writeln!(out, "{}", header.join(","));
        for row in &self.rows {
            let mut fields = Vec::new();
            for (cell, (_, kind)) in row.iter().zip(self.columns.iter()) {
                cell.push_csv(&mut fields, *kind);
            }
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let meta: serde_json::Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let columns: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cell::to_json).collect()))
            .collect();
        let doc = json!({
            "meta": meta,
            "columns": columns,
            "rows": rows,
        });
        serde_json::to_string_pretty(&doc).expect("table serialization cannot fail")
    }

    /// Inverse of [`to_csv`]: adjacent `X_re,X_im` headers reassemble into
    /// the complex column `X`. Used to verify round-trip idempotence.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut table = OutputTable::default();
        let mut saw_header = false;
        let mut raw_width = 0usize;
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::BadRange(format!("bad metadata line: {line}")))?;
                table.meta.push((k.to_string(), v.to_string()));
            } else if !saw_header {
                let names: Vec<&str> = line.split(',').collect();
                raw_width = names.len();
                let mut i = 0;
                while i < names.len() {
                    let name = names[i];
                    let is_pair = name.strip_suffix("_re").is_some_and(|stem| {
                        names.get(i + 1) == Some(&format!("{stem}_im").as_str())
                    });
                    if is_pair {
                        let stem = name.strip_suffix("_re").unwrap();
                        table.columns.push((stem.to_string(), ColumnKind::Complex));
                        i += 2;
                    } else {
                        // kind refined from the first data row below
                        table.columns.push((name.to_string(), ColumnKind::Text));
                        i += 1;
                    }
                }
                saw_header = true;
            } else {
                let fields: Vec<&str> = line.split(',').collect();
                if fields.len() != raw_width {
                    return Err(Error::BadRange(format!("ragged CSV row: {line}")));
                }
                let mut row = Vec::new();
                let mut i = 0;
                for (ci, (_, kind)) in table.columns.clone().iter().enumerate() {
                    if *kind == ColumnKind::Complex {
                        let (re, im) = (fields[i], fields[i + 1]);
                        i += 2;
                        if re.is_empty() && im.is_empty() {
                            row.push(Cell::Empty);
                        } else {
                            let re = re.parse::<f64>().map_err(|e| {
                                Error::BadRange(format!("bad complex field '{re}': {e}"))
                            })?;
                            let im = im.parse::<f64>().map_err(|e| {
                                Error::BadRange(format!("bad complex field '{im}': {e}"))
                            })?;
                            row.push(Cell::Complex(Complex64::new(re, im)));
                        }
                    } else {
                        let tok = fields[i];
                        i += 1;
                        let cell = if tok.is_empty() {
                            Cell::Empty
                        } else if let Ok(v) = tok.parse::<i64>() {
                            Cell::Int(v)
                        } else if let Ok(v) = tok.parse::<f64>() {
                            Cell::Real(v)
                        } else {
                            Cell::Text(tok.to_string())
                        };
                        match &cell {
                            Cell::Int(_) => table.columns[ci].1 = ColumnKind::Int,
                            Cell::Real(_) => table.columns[ci].1 = ColumnKind::Real,
                            _ => {}
                        }
                        row.push(cell);
                    }
                }
                table.rows.push(row);
            }
        }
        Ok(table)
    }
}
