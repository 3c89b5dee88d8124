// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Report documents and their JSON/CSV rendering.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Format;
use crate::run::Outcome;
use crate::CliError;

pub const TOOL: &str = "qlike";

/// Provenance block. The timestamp lives here only, so everything outside
/// the header is reproducible from config and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub timestamp_unix: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub header: Header,
    pub kind: String,
    pub config_digest: String,
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub result: Value,
}

impl Report {
    pub fn new(kind: &str, digest: &str, seed: u64, tolerance: Option<f64>, result: Value) -> Self {
        let timestamp_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self {
            header: Header { tool: TOOL.into(), version: env!("CARGO_PKG_VERSION").into(), timestamp_unix },
            kind: kind.into(),
            config_digest: digest.into(),
            seed,
            tolerance,
            result,
        }
    }
}

/// Flattens nested JSON into `(dotted.key, value)` pairs.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_error(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(format!("writing CSV: {e}"))
}

/// Renders a report. CSV carries provenance and summaries in `#` lines;
/// trajectory kinds write one row per time point, other kinds `key,value`.
pub fn render(report: &Report, outcome: &Outcome, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report).expect("report serializes") + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match &outcome.table {
                Some(t) => {
                    w.write_record(&t.header).map_err(csv_error)?;
                    for r in &t.rows {
                        w.write_record(r).map_err(csv_error)?;
                    }
                }
                None => {
                    w.write_record(["key", "value"]).map_err(csv_error)?;
                    let mut pairs = Vec::new();
                    flatten("", &report.result, &mut pairs);
                    for (k, v) in pairs {
                        w.write_record([k, v]).map_err(csv_error)?;
                    }
                }
            }
            let body = w.into_inner().map_err(csv_error)?;
            let mut text = String::from_utf8(body).map_err(csv_error)?;
            let h = &report.header;
            text.push_str(&format!("# tool,{} {}\n", h.tool, h.version));
            text.push_str(&format!("# timestamp_unix,{}\n", h.timestamp_unix));
            text.push_str(&format!("# kind,{}\n# config_digest,{}\n# seed,{}\n", report.kind, report.config_digest, report.seed));
            if let Some(t) = &outcome.table {
                for c in &t.comments {
                    text.push_str(&format!("# {c}\n"));
                }
            }
            Ok(text)
        }
    }
}
