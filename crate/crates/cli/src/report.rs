//! Report documents and their json / text / csv renderings.

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// Significant digits kept in every emitted number.
pub const SIG_DIGITS: usize = 10;

/// Round to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// JSON number rounded to 10 significant digits; `null` if not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

/// Human-readable number: plain decimal in a comfortable range, scientific
/// otherwise.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    let a = r.abs();
    if r == 0.0 || (1e-4..1e10).contains(&a) {
        format!("{r}")
    } else {
        let s = format!("{:.*e}", SIG_DIGITS - 1, r);
        // Drop trailing zeros of the mantissa.
        match s.split_once('e') {
            Some((m, e)) if m.contains('.') => {
                let m = m.trim_end_matches('0').trim_end_matches('.');
                format!("{m}e{e}")
            }
            _ => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => fmt_num(*x),
            Cell::Empty => "-".into(),
        }
    }

    fn raw(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => fmt_num(*x),
            Cell::Empty => String::new(),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Short identifier, used as the csv `table` column.
    pub id: String,
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(id: &str, title: &str, header: &[&str]) -> Self {
        Table {
            id: id.into(),
            title: title.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    fn render_text(&self, out: &mut String) {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        let widths: Vec<usize> = (0..self.header.len())
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].chars().count())
                    .chain(std::iter::once(self.header[c].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let numeric: Vec<bool> = (0..self.header.len())
            .map(|c| self.rows.iter().any(|r| matches!(r[c], Cell::Num(_))))
            .collect();
        let line = |vals: &[String]| -> String {
            let parts: Vec<String> = vals
                .iter()
                .enumerate()
                .map(|(c, v)| {
                    if numeric[c] {
                        format!("{v:>w$}", w = widths[c])
                    } else {
                        format!("{v:<w$}", w = widths[c])
                    }
                })
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        out.push_str(&self.title);
        out.push('\n');
        out.push_str(&line(&self.header));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r));
            out.push('\n');
        }
    }
}

/// A finished report: the json document plus tabular views of it.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Map<String, Value>,
    /// Free-form lines printed before the tables in text mode.
    pub preamble: Vec<String>,
    pub tables: Vec<Table>,
    /// Lines printed after the tables in text mode.
    pub notes: Vec<String>,
}

impl Output {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), Value::String(command.into()));
        Output {
            json,
            preamble: Vec::new(),
            tables: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.render_text()),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.preamble {
            out.push_str(l);
            out.push('\n');
        }
        for t in &self.tables {
            if !out.is_empty() {
                out.push('\n');
            }
            t.render_text(&mut out);
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for l in &self.notes {
                out.push_str(l);
                out.push('\n');
            }
        }
        out
    }

    /// Long format: one record per table cell.
    fn render_csv(&self) -> CliResult<String> {
        let io = |e: csv::Error| CliError::Io(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["table", "row", "column", "value"]).map_err(io)?;
        for t in &self.tables {
            for r in &t.rows {
                let key = r.first().map(Cell::raw).unwrap_or_default();
                for (h, c) in t.header.iter().zip(r).skip(1) {
                    w.write_record([t.id.as_str(), key.as_str(), h.as_str(), c.raw().as_str()])
                        .map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(format!("csv: {e}")))
    }
}
