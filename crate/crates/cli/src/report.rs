//! The versioned report every command produces, and its text rendering.
//!
//! Text output is generated from the same JSON value as `--json`, so both
//! carry identical numeric content.

use std::fmt::Write as _;

use plumbing_core::{BigInt, BigRational};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input_echo: Value,
    pub results: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, input_echo: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            input_echo,
            results: Value::Null,
            diagnostics: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&mut out, &self.results, 0);
        for d in &self.diagnostics {
            let _ = writeln!(out, "note: {d}");
        }
        out
    }
}

/// Lowest-terms rational; integers print without a denominator.
pub fn rat(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("({})", parts.join(","))
        }
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn flat_object(v: &Value) -> bool {
    v.as_object().is_some_and(|m| m.values().all(is_scalar))
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if is_scalar(val) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(val));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render(out, val, indent + 2);
                }
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(flat_object) => table(out, items, indent),
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) {
                    let _ = writeln!(out, "{pad}- {}", scalar(item));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render(out, item, indent + 2);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

/// Aligned columns keyed by the first row's fields.
fn table(out: &mut String, rows: &[Value], indent: usize) {
    let pad = " ".repeat(indent);
    let keys: Vec<&String> = rows[0].as_object().map(|m| m.keys().collect()).unwrap_or_default();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            keys.iter()
                .map(|k| scalar(row.get(k.as_str()).unwrap_or(&Value::Null)))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            cells
                .iter()
                .map(|c| c[i].chars().count())
                .chain([k.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |vals: Vec<&str>| -> String {
        let cols: Vec<String> = vals
            .iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}", w = *w))
            .collect();
        format!("{pad}{}", cols.join("  ").trim_end())
    };
    let _ = writeln!(out, "{}", line(keys.iter().map(|k| k.as_str()).collect()));
    for c in &cells {
        let _ = writeln!(out, "{}", line(c.iter().map(String::as_str).collect()));
    }
}
