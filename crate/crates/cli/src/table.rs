//! Tabular results and their CSV/JSON encodings.
//!
//! Floats are written as `{:.11e}` (twelve significant digits), which is
//! locale-independent and byte-stable for equal inputs.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(_) | Cell::Empty => Value::Null,
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }
}

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        // Avoid a "-0.00000000000e0" that differs from "0.00000000000e0".
        format!("{:.11e}", if x == 0.0 { 0.0 } else { x })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// Rows whose `error` column is non-empty.
    pub fn error_count(&self) -> usize {
        match self.columns.iter().position(|c| c == "error") {
            Some(i) => self.rows.iter().filter(|r| matches!(&r[i], Cell::Text(s) if !s.is_empty())).count(),
            None => 0,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// A CSV read back as strings, with typed accessors.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvData {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvData {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Parsed floats of a column; empty cells become `None`.
    pub fn floats(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.column(name)?;
        Some(self.rows.iter().map(|r| if r[i].is_empty() { None } else { r[i].parse().ok() }).collect())
    }
}

pub fn read_csv(text: &str) -> Result<CsvData, csv::Error> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let columns = r.headers()?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CsvData { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(format_float(1.0), "1.00000000000e0");
        assert_eq!(format_float(-0.0), "0.00000000000e0");
        assert_eq!(format_float(-1.5e-7), "-1.50000000000e-7");
        assert_eq!(format_float(f64::NAN), "nan");
        assert_eq!(format_float(123456.7890123456), "1.23456789012e5");
    }

    #[test]
    fn csv_round_trip() {
        let mut t = Table::new(&["ell", "entropy_bits", "flag", "error"]);
        t.push(vec![Cell::Int(1), Cell::Float(0.123456789012345), Cell::Bool(false), Cell::Text(String::new())]);
        t.push(vec![Cell::Int(2), Cell::Empty, Cell::Bool(true), Cell::Text("solver failed, \"badly\"".into())]);
        let text = t.to_csv();
        let back = read_csv(&text).unwrap();
        assert_eq!(back.columns, t.columns);
        assert_eq!(back.rows[1][3], "solver failed, \"badly\"");
        let f = back.floats("entropy_bits").unwrap();
        assert_eq!(f[0], Some(0.123456789012));
        assert_eq!(f[1], None);
        assert_eq!(t.error_count(), 1);
    }
}
