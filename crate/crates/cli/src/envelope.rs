use std::fmt::Write as _;

use dds_core::DoubleDouble;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Map<String, Value>,
    pub diagnostics: Map<String, Value>,
    pub tool_version: String,
}

impl Envelope {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Map::new(),
            results: Map::new(),
            diagnostics: Map::new(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), v.into());
        self
    }

    pub fn diag(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.diagnostics.insert(key.to_string(), v.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

/// A float with 17 significant digits. Non-finite values become strings.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    if x == 0.0 {
        return serde_json::from_str("0.0").expect("literal");
    }
    serde_json::from_str(&format!("{x:.16e}")).expect("formatted float is valid JSON")
}

pub fn dd(x: DoubleDouble) -> Value {
    num(x.to_f64())
}

/// An integer of any size, kept exact.
pub fn big(text: &str) -> Value {
    serde_json::from_str(text).expect("integer literal")
}

pub fn row(fields: Vec<(&str, Value)>) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn rows_of(results: &Map<String, Value>) -> Option<&Vec<Value>> {
    match results.get("rows") {
        Some(Value::Array(rows)) => Some(rows),
        _ => None,
    }
}

fn columns(rows: &[Value]) -> Vec<String> {
    match rows.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => vec!["value".to_string()],
    }
}

fn cells(r: &Value, cols: &[String]) -> Vec<String> {
    match r {
        Value::Object(m) => cols.iter().map(|c| m.get(c).map(scalar).unwrap_or_default()).collect(),
        other => vec![scalar(other)],
    }
}

/// Row data when `results.rows` exists, otherwise one `key,value` line per
/// scalar result.
pub fn to_csv(env: &Envelope) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(rows) = rows_of(&env.results) {
        let cols = columns(rows);
        w.write_record(&cols).expect("in-memory write");
        for r in rows {
            w.write_record(cells(r, &cols)).expect("in-memory write");
        }
    } else {
        w.write_record(["key", "value"]).expect("in-memory write");
        for (k, v) in &env.results {
            let text = match v {
                Value::Array(_) | Value::Object(_) => v.to_string(),
                _ => scalar(v),
            };
            w.write_record([k.as_str(), text.as_str()]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn write_map(out: &mut String, title: &str, map: &Map<String, Value>) {
    let scalars: Vec<_> = map.iter().filter(|(k, v)| !v.is_array() && !v.is_object() && *k != "rows").collect();
    let nested: Vec<_> = map.iter().filter(|(k, v)| (v.is_array() || v.is_object()) && *k != "rows").collect();
    if scalars.is_empty() && nested.is_empty() {
        return;
    }
    let _ = writeln!(out, "{title}:");
    let width = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in scalars {
        let _ = writeln!(out, "  {k:<width$}  {}", scalar(v));
    }
    for (k, v) in nested {
        match v {
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                let _ = writeln!(out, "  {k}:");
                write_table(out, items, "    ");
            }
            _ => {
                let _ = writeln!(out, "  {k}  {v}");
            }
        }
    }
}

fn write_table(out: &mut String, rows: &[Value], indent: &str) {
    let cols = columns(rows);
    let body: Vec<Vec<String>> = rows.iter().map(|r| cells(r, &cols)).collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| body.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("{indent}{}", parts.join("  "))
    };
    let _ = writeln!(out, "{}", line(&cols));
    for r in &body {
        let _ = writeln!(out, "{}", line(r));
    }
}

pub fn to_table(env: &Envelope) -> String {
    let mut out = format!("{} (dds {})\n", env.command, env.tool_version);
    write_map(&mut out, "params", &env.params);
    write_map(&mut out, "results", &env.results);
    if let Some(rows) = rows_of(&env.results) {
        if !rows.is_empty() {
            write_table(&mut out, rows, "  ");
        }
    }
    write_map(&mut out, "diagnostics", &env.diagnostics);
    out
}
