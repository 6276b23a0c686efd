//! The JSON report shared by all commands. Every exact number is a string.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ReportDocument {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub field: String,
    pub dim: Option<String>,
    pub results: Value,
    pub optimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    /// Wall-clock milliseconds per phase; omitted with `--no-timings`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, String>>,
}

impl ReportDocument {
    pub fn new(command: &str, input: &str, field: &str, dim: Option<usize>, results: Value) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            input: input.to_string(),
            field: field.to_string(),
            dim: dim.map(|d| d.to_string()),
            results,
            optimal: None,
            warning: None,
            timings: Some(BTreeMap::new()),
        }
    }

    pub fn record_timing(&mut self, phase: &str, started: std::time::Instant) {
        if let Some(t) = &mut self.timings {
            t.insert(phase.to_string(), format!("{:.3}", started.elapsed().as_secs_f64() * 1000.0));
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering of the same content.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} ({}, field {}", self.command, self.input, self.field);
        if let Some(d) = &self.dim {
            write!(out, ", dim {d}").unwrap();
        }
        out.push_str(")\n");
        render(&self.results, 0, &mut out);
        if let Some(o) = self.optimal {
            writeln!(out, "optimal: {o}").unwrap();
        }
        if let Some(w) = &self.warning {
            writeln!(out, "warning: {w}").unwrap();
        }
        if let Some(t) = &self.timings {
            for (k, v) in t {
                writeln!(out, "time {k}: {v} ms").unwrap();
            }
        }
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::Null => Some("-".into()),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar_text(val) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        render(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar_text(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        render(item, indent + 1, out);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default()).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trips_losslessly() {
        let mut doc = ReportDocument::new("bound", "family:cube:2", "rational", Some(2), json!({"value": "3/7"}));
        doc.optimal = Some(true);
        doc.warning = Some("w".into());
        let back = ReportDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert!(doc.to_json().contains("\"schema\": 1"));
        doc.timings = None;
        assert!(!doc.to_json().contains("timings"));
        assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn text_rendering_lists_nested_values() {
        let doc = ReportDocument::new("gb", "x", "rational", None, json!({"basis": ["x1^2 - x1"], "n": "1"}));
        let text = doc.to_text();
        assert!(text.contains("basis:\n  - x1^2 - x1\n"));
        assert!(text.contains("n: 1\n"));
    }
}
