//! Serialization of run manifests and result records.
//!
//! Result streams are JSON Lines: in a file, one `{"manifest": ...}` object
//! first, then one `{"record": ..., "fields": ...}` object per result. All
//! numbers are serialized as decimal strings so consumers never lose
//! precision to a fixed integer width. CSV is available for the tabular
//! commands; in CSV files the manifest rides along as a `#` comment line.
//!
//! Volatile run details (wall time, worker count) are deliberately kept out
//! of emitted files: repeating an invocation — with any `--workers` value —
//! must reproduce the bytes exactly.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};

/// Identification of one run: embedded exactly once per result file.
#[derive(Serialize, Clone)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    pub seed: String,
    pub parameters: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: seed.to_string(),
            parameters: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }
}

/// One result row: a record type plus its fields (decimal strings, lists
/// of decimal strings, or nested maps of them).
pub struct Record {
    pub kind: &'static str,
    pub fields: Map<String, Value>,
}

impl Record {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            fields: Map::new(),
        }
    }

    pub fn num(mut self, key: &str, value: impl ToString) -> Self {
        self.fields
            .insert(key.to_string(), Value::String(value.to_string()));
        self
    }

    pub fn text(mut self, key: &str, value: &str) -> Self {
        self.fields
            .insert(key.to_string(), Value::String(value.to_string()));
        self
    }

    pub fn list(mut self, key: &str, values: impl IntoIterator<Item = impl ToString>) -> Self {
        let items: Vec<Value> = values
            .into_iter()
            .map(|v| Value::String(v.to_string()))
            .collect();
        self.fields.insert(key.to_string(), Value::Array(items));
        self
    }

    pub fn nested(mut self, key: &str, pairs: impl IntoIterator<Item = (String, String)>) -> Self {
        let mut map = Map::new();
        for (k, v) in pairs {
            map.insert(k, Value::String(v));
        }
        self.fields.insert(key.to_string(), Value::Object(map));
        self
    }

    pub fn null(mut self, key: &str) -> Self {
        self.fields.insert(key.to_string(), Value::Null);
        self
    }
}

#[derive(Serialize)]
struct ManifestLine<'a> {
    manifest: &'a Manifest,
}

#[derive(Serialize)]
struct RecordLine<'a> {
    record: &'a str,
    fields: &'a Map<String, Value>,
}

/// JSON Lines rendering; the manifest, when given, comes first.
pub fn render_json(manifest: Option<&Manifest>, records: &[Record]) -> String {
    let mut out = String::new();
    if let Some(manifest) = manifest {
        out.push_str(&serde_json::to_string(&ManifestLine { manifest }).expect("manifest json"));
        out.push('\n');
    }
    for record in records {
        let line = RecordLine {
            record: record.kind,
            fields: &record.fields,
        };
        out.push_str(&serde_json::to_string(&line).expect("record json"));
        out.push('\n');
    }
    out
}

/// A rendered table for the CSV format.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Extra trailing comment lines (summaries), without the `# ` prefix.
    pub trailers: Vec<String>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl ToString>) -> Self {
        Self {
            columns: columns.into_iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            trailers: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = impl ToString>) {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }
}

/// CSV rendering; the manifest, when given, becomes a leading comment line.
pub fn render_csv(manifest: Option<&Manifest>, table: &Table) -> String {
    let mut out = String::new();
    if let Some(manifest) = manifest {
        out.push_str("# manifest: ");
        out.push_str(&serde_json::to_string(manifest).expect("manifest json"));
        out.push('\n');
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    for trailer in &table.trailers {
        out.push_str("# ");
        out.push_str(trailer);
        out.push('\n');
    }
    out
}
