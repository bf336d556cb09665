//! Tabular reports rendered as RFC-4180 CSV or versioned JSON.

use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::time::Duration;

pub const SCHEMA: &str = "kappa-fourier/1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Str(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn opt(x: Option<f64>) -> Cell {
        x.map_or(Cell::Empty, Cell::Num)
    }

    /// 17 significant digits round-trip every double.
    fn csv_text(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Num(x) => format!("{x}"),
            Cell::Int(i) => i.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) | Cell::Empty => Value::Null,
            Cell::Int(i) => json!(i),
            Cell::Str(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
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

/// Kind of a row-level error, which decides the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowError {
    Input,
    Numerical,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteCount {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub row_errors: Vec<RowError>,
    pub suites: Option<SuiteCount>,
    /// extra JSON-only detail
    pub detail: Option<Value>,
}

impl Report {
    pub fn new(
        command: &str,
        config: BTreeMap<String, String>,
        columns: Vec<&'static str>,
    ) -> Self {
        Report {
            command: command.to_string(),
            config,
            columns,
            rows: Vec::new(),
            row_errors: Vec::new(),
            suites: None,
            detail: None,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// 0 success, 1 verification failure, 2 input error, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        if self.row_errors.contains(&RowError::Numerical) {
            3
        } else if self.row_errors.contains(&RowError::Input) {
            2
        } else if self.suites.as_ref().is_some_and(|s| s.failed > 0) {
            1
        } else {
            0
        }
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(w);
        wr.write_record(&self.columns)?;
        for row in &self.rows {
            wr.write_record(row.iter().map(Cell::csv_text))?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn to_json(&self, wall: Duration) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(m)
            })
            .collect();
        let mut summary = json!({
            "rows": self.rows.len(),
            "row_errors": self.row_errors.len(),
            "exit_code": self.exit_code(),
        });
        if let Some(s) = &self.suites {
            summary["suites_passed"] = json!(s.passed);
            summary["suites_failed"] = json!(s.failed);
        }
        let mut out = json!({
            "schema": SCHEMA,
            "library_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": self.config,
            "columns": self.columns,
            "rows": rows,
            "summary": summary,
            "meta": { "wall_time_s": wall.as_secs_f64() },
        });
        if let Some(d) = &self.detail {
            out["detail"] = d.clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting_and_digits() {
        let mut r = Report::new("t", BTreeMap::new(), vec!["x", "note"]);
        r.push(vec![Cell::Num(0.1), Cell::from("a, \"b\"")]);
        r.push(vec![Cell::Num(f64::NAN), Cell::Empty]);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(
            s,
            "x,note\r\n1.0000000000000001e-1,\"a, \"\"b\"\"\"\r\nNaN,\r\n"
        );
        assert_eq!("1.0000000000000001e-1".parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn exit_codes() {
        let mut r = Report::new("t", BTreeMap::new(), vec![]);
        assert_eq!(r.exit_code(), 0);
        r.suites = Some(SuiteCount {
            passed: 1,
            failed: 1,
        });
        assert_eq!(r.exit_code(), 1);
        r.row_errors.push(RowError::Input);
        assert_eq!(r.exit_code(), 2);
        r.row_errors.push(RowError::Numerical);
        assert_eq!(r.exit_code(), 3);
    }
}
