//! Deterministic report emission.
//!
//! Every tabular command renders one [`Table`].  CSV output is
//! byte-deterministic: fixed column order, floats at 17 significant digits
//! with a lowercase exponent (enough to round-trip any finite `f64`),
//! `\n` line endings, and minimal quoting.  JSON output is an array of row
//! objects that round-trips through `serde_json`.

use serde_json::{Map, Value};

/// Output encodings selectable via `--format` or the config file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    /// Comma-separated values with a header row.
    Csv,
    /// Pretty-printed JSON array of row objects.
    Json,
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Integer-valued column (quantum numbers, counts).
    Int(i64),
    /// Floating-point column.
    Num(f64),
    /// Free text (mode names, check names, error messages).
    Str(String),
    /// Absent value: empty CSV field, JSON `null`.
    Empty,
}

/// `f64` at 17 significant digits, lowercase `e` exponent.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Quotes a CSV field only when it contains a delimiter, quote, or newline.
fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') || raw.contains('\r') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

/// Named columns over typed rows, rendered to CSV or JSON.
#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    /// An empty table with the given header.
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    /// Appends one row; the cell count must match the header.
    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    /// CSV with a header line, `\n` endings, and a trailing newline.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match cell {
                    Cell::Int(i) => out.push_str(&i.to_string()),
                    Cell::Num(x) => out.push_str(&fmt_float(*x)),
                    Cell::Str(s) => out.push_str(&csv_field(s)),
                    Cell::Empty => {}
                }
            }
            out.push('\n');
        }
        out
    }

    /// JSON array of `{column: value}` objects (non-finite floats become
    /// `null`, like [`Cell::Empty`]).
    pub fn to_json_value(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut object = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Int(i) => Value::from(*i),
                        Cell::Num(x) => Value::from(*x),
                        Cell::Str(s) => Value::from(s.as_str()),
                        Cell::Empty => Value::Null,
                    };
                    object.insert((*name).to_string(), value);
                }
                Value::Object(object)
            })
            .collect::<Vec<_>>();
        Value::Array(rows)
    }

    /// Renders in the requested format, newline-terminated.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => {
                let mut text = serde_json::to_string_pretty(&self.to_json_value())
                    .expect("tables serialize infallibly");
                text.push('\n');
                text
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_are_fixed_width_scientific() {
        assert_eq!(fmt_float(1.5), "1.5000000000000000e0");
        assert_eq!(fmt_float(-0.25), "-2.5000000000000000e-1");
        assert_eq!(fmt_float(0.0), "0.0000000000000000e0");
        // 17 significant digits round-trip any f64.
        let x = std::f64::consts::PI;
        assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_quotes_only_when_needed() {
        let mut table = Table::new(&["k", "note"]);
        table.push_row(vec![Cell::Int(1), Cell::Str("plain".into())]);
        table.push_row(vec![Cell::Int(2), Cell::Str("a, b".into())]);
        table.push_row(vec![Cell::Int(3), Cell::Str("say \"hi\"".into())]);
        table.push_row(vec![Cell::Int(4), Cell::Empty]);
        assert_eq!(
            table.to_csv(),
            "k,note\n1,plain\n2,\"a, b\"\n3,\"say \"\"hi\"\"\"\n4,\n"
        );
    }

    #[test]
    fn json_rows_round_trip() {
        let mut table = Table::new(&["n", "e"]);
        table.push_row(vec![Cell::Int(1), Cell::Num(-0.190983)]);
        table.push_row(vec![Cell::Int(2), Cell::Empty]);
        let rendered = table.render(OutputFormat::Json);
        let parsed: Value = serde_json::from_str(&rendered).unwrap();
        assert_eq!(parsed, table.to_json_value());
        assert_eq!(parsed[0]["e"], Value::from(-0.190983));
        assert_eq!(parsed[1]["e"], Value::Null);
    }

    #[test]
    #[should_panic(expected = "row width")]
    fn mismatched_rows_are_refused() {
        let mut table = Table::new(&["a", "b"]);
        table.push_row(vec![Cell::Int(1)]);
    }
}
