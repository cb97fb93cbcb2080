//! Command-line harness over `jacring-core`. Every run emits one JSON
//! record holding the resolved configuration, the payload and timing.

pub mod args;
pub mod commands;
pub mod error;
pub mod record;
pub mod survey;

use std::time::Instant;

use serde_json::Value;

use crate::args::Cli;
use crate::error::{CliError, CliResult};
use crate::record::RunRecord;

/// Runs the parsed command line and returns the record.
pub fn execute(cli: &Cli) -> CliResult<RunRecord> {
    let start = Instant::now();
    let (cfg, payload) = commands::run_command(&cli.command)?;
    let mut rec = RunRecord::new(cfg, payload, start.elapsed().as_millis());
    rec.pass = infer_pass(&rec.payload);
    Ok(rec)
}

fn infer_pass(payload: &Value) -> Option<bool> {
    ["all_pass", "passes", "all_perfect", "all_injective"]
        .iter()
        .find_map(|k| payload.get(*k).and_then(Value::as_bool))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// CSV view of a payload: the `rows` (or `reports`) table when present,
/// otherwise one key,value line per top-level field.
pub fn render_csv(payload: &Value) -> CliResult<String> {
    let err = |e: csv::Error| CliError::Internal(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    let table = ["rows", "reports", "entries"]
        .iter()
        .find_map(|k| payload.get(*k).and_then(Value::as_array))
        .filter(|rows| rows.iter().all(Value::is_object) && !rows.is_empty());
    match table {
        Some(rows) => {
            let header: Vec<String> = rows[0].as_object().expect("object").keys().cloned().collect();
            w.write_record(&header).map_err(err)?;
            for r in rows {
                w.write_record(header.iter().map(|h| cell(&r[h]))).map_err(err)?;
            }
        }
        None => {
            w.write_record(["key", "value"]).map_err(err)?;
            if let Value::Object(map) = payload {
                for (k, v) in map {
                    w.write_record([k.clone(), cell(v)]).map_err(err)?;
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}
