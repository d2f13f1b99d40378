//! Rendering of command results as JSON, CSV or aligned plain text.

use bqf_core::rational::format_rational;
use bqf_core::Rational;
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Rat(Rational),
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn int(v: usize) -> Self {
        Cell::Int(v as i64)
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Rat(r) => Value::String(format_rational(r)),
            // non-finite values have no JSON number form
            Cell::Float(x) => {
                json!({ "value": serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number), "float": true })
            }
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Cell::Rat(r) => format_rational(r),
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_csv(&self) -> String {
        let text = self.to_text();
        if text.contains([',', '"', '\n']) {
            format!("\"{}\"", text.replace('"', "\"\""))
        } else {
            text
        }
    }
}

/// Scalar fields plus one named table.
#[derive(Debug, Clone, Default)]
pub struct Output {
    meta: Vec<(&'static str, Cell)>,
    table_name: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    csv_override: Option<String>,
}

impl Output {
    pub fn new(table_name: &'static str, columns: &[&'static str]) -> Self {
        Self { table_name, columns: columns.to_vec(), ..Self::default() }
    }

    pub fn meta(mut self, key: &'static str, value: Cell) -> Self {
        self.meta.push((key, value));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// Replaces the generated CSV with a fixed library schema.
    pub fn csv(mut self, text: String) -> Self {
        self.csv_override = Some(text);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Plain => self.render_plain(),
        }
    }

    fn render_json(&self) -> String {
        let mut obj = Map::new();
        for (k, v) in &self.meta {
            obj.insert((*k).to_string(), v.to_json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let fields = self.columns.iter().zip(row).map(|(c, v)| ((*c).to_string(), v.to_json()));
                Value::Object(fields.collect())
            })
            .collect();
        if !self.columns.is_empty() {
            obj.insert(self.table_name.to_string(), Value::Array(rows));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialize");
        text.push('\n');
        text
    }

    fn render_csv(&self) -> String {
        if let Some(text) = &self.csv_override {
            return text.clone();
        }
        if self.columns.is_empty() {
            let mut out = String::from("key,value\n");
            for (k, v) in &self.meta {
                out.push_str(&format!("{k},{}\n", v.to_csv()));
            }
            return out;
        }
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::to_csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("{k}: {}\n", v.to_text()));
        }
        if self.rows.is_empty() {
            return out;
        }
        if !self.meta.is_empty() {
            out.push('\n');
        }
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::to_text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| cells.iter().map(|r| r[j].chars().count()).chain([self.columns[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |fields: Vec<&str>| {
            let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(self.columns.clone()));
        for row in &cells {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}
