use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::args::Format;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub seed: u64,
    /// SHA-256 of the input bytes, when the command read a graph.
    pub input_digest: Option<String>,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str, params: Value, seed: u64, input: Option<&[u8]>) -> Self {
        Self {
            command: command.to_string(),
            params,
            seed,
            input_digest: input.map(|bytes| hex::encode(Sha256::digest(bytes))),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
struct Envelope<'a> {
    manifest: &'a RunManifest,
    report: &'a Value,
}

pub fn open_sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json(sink: &mut dyn Write, manifest: &RunManifest, report: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *sink, &Envelope { manifest, report })?;
    writeln!(sink)?;
    Ok(())
}

/// One row per trial when the report lists trials, otherwise a single row of
/// the report's scalar fields. Histogram-like maps with numeric keys are left
/// out so every row has the same columns.
pub fn write_csv(sink: &mut dyn Write, manifest: &RunManifest, report: &Value) -> Result<()> {
    let mut head = Map::new();
    head.insert("command".into(), Value::String(manifest.command.clone()));
    head.insert("seed".into(), Value::from(manifest.seed));
    head.insert(
        "input_digest".into(),
        manifest.input_digest.clone().map_or(Value::Null, Value::String),
    );
    let rows: Vec<Map<String, Value>> = match report.get("trials").and_then(Value::as_array) {
        Some(trials) if trials.iter().all(Value::is_object) && !trials.is_empty() => trials
            .iter()
            .map(|t| {
                let mut row = head.clone();
                flatten("", t, &mut row);
                row
            })
            .collect(),
        _ => {
            let mut row = head;
            flatten("", report, &mut row);
            vec![row]
        }
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(rows[0].keys())?;
    for row in &rows {
        w.write_record(row.values().map(cell))?;
    }
    w.flush()?;
    Ok(())
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    let Value::Object(obj) = v else { return };
    if !obj.is_empty() && obj.keys().all(|k| k.parse::<u64>().is_ok()) {
        return;
    }
    for (k, val) in obj {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match val {
            Value::Object(_) => flatten(&key, val, out),
            Value::Array(_) => {}
            _ => {
                out.insert(key, val.clone());
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn emit(out: Option<&Path>, format: Format, manifest: &RunManifest, report: &Value) -> Result<()> {
    let mut sink = open_sink(out)?;
    match format {
        Format::Csv => write_csv(&mut *sink, manifest, report),
        _ => write_json(&mut *sink, manifest, report),
    }
}
