use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use gent_core::verify::Check;

use crate::input::LoadedGraph;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub struct Output {
    format: Format,
    timing: bool,
}

impl Output {
    pub fn new(format: Format, timing: bool) -> Output {
        Output { format, timing }
    }

    pub fn emit(&self, command: &str, graph: Option<&LoadedGraph>, result: Value, start: Instant) {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("command".into(), json!(command));
        if let Some(g) = graph {
            doc.insert(
                "graph".into(),
                json!({
                    "source": g.source,
                    "line_graph": g.line_graph,
                    "n": g.graph.n(),
                    "m": g.graph.edge_count(),
                }),
            );
        }
        doc.insert("result".into(), result);
        if self.timing {
            doc.insert("elapsed_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        }
        match self.format {
            Format::Json => println!("{}", Value::Object(doc)),
            Format::Text => print_text(&doc),
        }
    }

    /// One line per check, then a summary line.
    pub fn emit_checks(&self, checks: &[Check], start: Instant) {
        let failed = checks.iter().filter(|c| !c.passed).count();
        for c in checks {
            match self.format {
                Format::Json => println!("{}", serde_json::to_string(c).expect("serializable")),
                Format::Text => println!(
                    "{} [{}] {}: expected {}, actual {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.criterion,
                    c.name,
                    c.expected,
                    c.actual
                ),
            }
        }
        let mut summary = json!({
            "schema": SCHEMA,
            "command": "verify",
            "checks": checks.len(),
            "failed": failed,
        });
        if self.timing {
            summary["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
        }
        match self.format {
            Format::Json => println!("{summary}"),
            Format::Text => println!("{} checks, {failed} failed", checks.len()),
        }
    }
}

fn print_text(doc: &Map<String, Value>) {
    for (key, value) in doc {
        match value {
            Value::Object(inner) if key == "result" || key == "graph" => {
                for (k, v) in inner {
                    println!("{k}: {}", scalar(v));
                }
            }
            _ => println!("{key}: {}", scalar(value)),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
