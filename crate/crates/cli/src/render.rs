//! Output documents and their JSON, CSV and terminal renderings.
//!
//! Every float is rounded to 10 significant digits before it is printed, in
//! every format.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::OutputFormat;

pub const SCHEMA_VERSION: &str = "v1";

pub struct Table {
    pub title: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// One emitted result: a JSON object tagged with its schema id, plus
/// optional plot-ready tables and a one-line summary.
pub struct Document {
    pub schema: &'static str,
    pub body: Map<String, Value>,
    pub tables: Vec<Table>,
    pub summary: Option<String>,
}

impl Document {
    pub fn new(schema: &'static str) -> Self {
        Self {
            schema,
            body: Map::new(),
            tables: Vec::new(),
            summary: None,
        }
    }

    pub fn field<T: Serialize>(mut self, key: &str, value: T) -> Self {
        let v = serde_json::to_value(value).expect("plain data serializes");
        self.body.insert(key.to_string(), v);
        self
    }

    /// Merge the fields of a serializable struct into the top level.
    pub fn flatten<T: Serialize>(mut self, value: T) -> Self {
        match serde_json::to_value(value).expect("plain data serializes") {
            Value::Object(map) => self.body.extend(map),
            other => panic!("expected an object, got {other}"),
        }
        self
    }

    pub fn table(mut self, table: Table) -> Self {
        self.tables.push(table);
        self
    }

    pub fn summary(mut self, line: String) -> Self {
        self.summary = Some(line);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut body = self.body.clone();
        body.insert(
            "schema".into(),
            Value::String(format!("collectorlab.{}.{SCHEMA_VERSION}", self.schema)),
        );
        round_value(Value::Object(body))
    }

    /// Text for stdout, and an optional line for stderr.
    pub fn render(&self, format: OutputFormat) -> (String, Option<String>) {
        match format {
            OutputFormat::Json => {
                let mut out = serde_json::to_string_pretty(&self.to_json()).expect("valid json");
                out.push('\n');
                (out, self.summary.clone())
            }
            OutputFormat::Csv => (self.render_csv(), None),
            OutputFormat::Human => (self.render_human(), None),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        match self.tables.first() {
            Some(table) => {
                out.push_str(&table.columns.join(","));
                out.push('\n');
                for row in &table.rows {
                    let cells: Vec<String> = row.iter().map(|v| csv_cell(&round_value(v.clone()))).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            None => {
                out.push_str("key,value\n");
                for (k, v) in flatten_scalars(&self.to_json()) {
                    let _ = writeln!(out, "{},{}", csv_escape(&k), csv_escape(&v));
                }
            }
        }
        out
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.summary {
            out.push_str(s);
            out.push_str("\n\n");
        }
        let pairs = flatten_scalars(&self.to_json());
        let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &pairs {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        for table in &self.tables {
            let cells: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(|v| plain(&round_value(v.clone()))).collect())
                .collect();
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|i| {
                    cells
                        .iter()
                        .map(|r| r[i].len())
                        .chain([table.columns[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let _ = writeln!(out, "\n{}", table.title);
            let header: Vec<String> = table
                .columns
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", header.join("  "));
            for row in &cells {
                let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                let _ = writeln!(out, "{}", line.join("  "));
            }
        }
        out
    }
}

/// `x` rounded to 10 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().expect("formatted float parses")
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        other => csv_escape(&plain(other)),
    }
}

/// Dotted-path `(key, value)` pairs for scalar leaves. Arrays of objects are
/// left to the tables; short scalar arrays are joined inline.
fn flatten_scalars(v: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, child, out);
                }
            }
            Value::Array(items) => {
                if items.iter().any(|i| i.is_object() || i.is_array()) {
                    return;
                }
                if items.len() <= 8 {
                    let joined: Vec<String> = items.iter().map(plain).collect();
                    out.push((prefix.to_string(), joined.join("; ")));
                } else {
                    out.push((prefix.to_string(), format!("[{} values]", items.len())));
                }
            }
            scalar => out.push((prefix.to_string(), plain(scalar))),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}
