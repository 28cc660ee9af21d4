//! CSV and JSON-lines emission.
//!
//! Every artifact starts with a metadata header: `# key: value` comment lines
//! for CSV, a `{"meta": {...}}` object for JSON lines. CSV floats carry 17
//! significant digits.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::Result;
use crate::sweep::SweepRecord;

pub const TOOL: &str = "polarizer";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const RECORD_SCHEMA: &str = "sweep-records/1";

/// Columns following the axis columns in every sweep table.
pub const RECORD_COLUMNS: [&str; 9] = [
    "transmit", "reflect", "loss", "fidelity", "t_re", "t_im", "r_re", "r_im", "status",
];

/// Header content shared by all outputs.
#[derive(Debug, Clone)]
pub struct Metadata {
    entries: Map<String, Value>,
}

impl Metadata {
    pub fn new(command: &str, schema: &str, config: &RunConfig) -> Self {
        let mut entries = Map::new();
        entries.insert("tool".into(), json!(TOOL));
        entries.insert("version".into(), json!(VERSION));
        entries.insert("schema".into(), json!(schema));
        entries.insert("command".into(), json!(command));
        entries.insert(
            "config".into(),
            serde_json::to_value(config.resolved()).expect("config serializes"),
        );
        Self { entries }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.entries.insert(key.into(), value.into());
        self
    }

    pub fn write(&self, out: &mut dyn Write, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Csv => {
                for (key, value) in &self.entries {
                    match value {
                        Value::String(s) => writeln!(out, "# {key}: {s}")?,
                        other => writeln!(out, "# {key}: {other}")?,
                    }
                }
            }
            OutputFormat::Jsonl => {
                writeln!(out, "{}", json!({ "meta": self.entries }))?;
            }
        }
        Ok(())
    }
}

/// `{:.16e}` formatting: 17 significant digits, exact f64 round trip.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:.16e}")
    }
}

fn json_float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn csv_text(s: &str) -> String {
    s.replace([',', '\n', '\r'], ";")
}

pub fn write_records(
    out: &mut dyn Write,
    format: OutputFormat,
    axis_names: &[&str],
    records: &[SweepRecord],
) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let header: Vec<&str> = axis_names.iter().chain(&RECORD_COLUMNS).copied().collect();
            writeln!(out, "{}", header.join(","))?;
            for rec in records {
                let mut fields: Vec<String> = rec.coords.iter().map(|&v| format_float(v)).collect();
                fields.extend(
                    [
                        rec.transmit,
                        rec.reflect,
                        rec.loss,
                        rec.fidelity,
                        rec.t.re,
                        rec.t.im,
                        rec.r.re,
                        rec.r.im,
                    ]
                    .map(format_float),
                );
                fields.push(rec.error.as_deref().map_or("ok".into(), csv_text));
                writeln!(out, "{}", fields.join(","))?;
            }
        }
        OutputFormat::Jsonl => {
            for rec in records {
                let mut obj = Map::new();
                for (name, &v) in axis_names.iter().zip(&rec.coords) {
                    obj.insert((*name).into(), json_float(v));
                }
                let values = [
                    rec.transmit,
                    rec.reflect,
                    rec.loss,
                    rec.fidelity,
                    rec.t.re,
                    rec.t.im,
                    rec.r.re,
                    rec.r.im,
                ];
                for (name, v) in RECORD_COLUMNS.iter().zip(values) {
                    obj.insert((*name).into(), json_float(v));
                }
                obj.insert("status".into(), json!(rec.error.as_deref().unwrap_or("ok")));
                writeln!(out, "{}", Value::Object(obj))?;
            }
        }
    }
    Ok(())
}

/// Writes one flat row (`key → value`) as a two-line CSV table or one JSON object.
pub fn write_row(out: &mut dyn Write, format: OutputFormat, row: &[(&str, Value)]) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let keys: Vec<&str> = row.iter().map(|(k, _)| *k).collect();
            writeln!(out, "{}", keys.join(","))?;
            let values: Vec<String> = row
                .iter()
                .map(|(_, v)| match v {
                    Value::Number(n) if n.is_f64() => format_float(n.as_f64().unwrap()),
                    Value::String(s) => csv_text(s),
                    Value::Null => "NaN".into(),
                    other => other.to_string(),
                })
                .collect();
            writeln!(out, "{}", values.join(","))?;
        }
        OutputFormat::Jsonl => {
            let obj: Map<String, Value> =
                row.iter().map(|(k, v)| ((*k).into(), v.clone())).collect();
            writeln!(out, "{}", Value::Object(obj))?;
        }
    }
    Ok(())
}
