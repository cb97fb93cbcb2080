use std::collections::BTreeSet;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{Command, FieldArgs, PrimeArgs, SeedArgs, SourceArgs, SurveyKind};
use crate::commands::{parse_range, run_command};
use crate::error::{CliError, CliResult};
use crate::record::{RunConfig, RunRecord};

fn default_primes() -> PrimeArgs {
    PrimeArgs {
        primes: jacring_core::DEFAULT_PRIMES.to_vec(),
    }
}

fn default_seed() -> SeedArgs {
    SeedArgs {
        seed: jacring_core::rng::DEFAULT_SEED,
    }
}

/// All exponent tuples of length `len` with entries in `lo..=hi`.
fn tuples(len: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (lo..=hi).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect()
    })
}

/// The cells of a survey, each as a stand-alone command.
pub fn survey_cells(cmd: &Command) -> CliResult<Vec<Command>> {
    let Command::Survey {
        kind,
        n_range,
        d_range,
        nvars_range,
        a_range,
        field,
        ..
    } = cmd
    else {
        return Err(CliError::Internal("not a survey".into()));
    };
    let (n_lo, n_hi) = parse_range(n_range)?;
    let (d_lo, d_hi) = parse_range(d_range)?;
    let field = FieldArgs { field: field.field };
    let mut cells = Vec::new();
    match kind {
        SurveyKind::Hilbert => {
            for n in n_lo..=n_hi {
                for d in d_lo..=d_hi {
                    cells.push(Command::Hilbert {
                        source: SourceArgs {
                            fermat: Some(vec![n, d]),
                            ..SourceArgs::default()
                        },
                        field: field.clone(),
                        primes: default_primes(),
                        seed: default_seed(),
                    });
                }
            }
        }
        SurveyKind::Star => {
            for n in n_lo..=n_hi {
                for d in d_lo.max(n + 1)..=d_hi {
                    for k in 0..=d - n - 1 {
                        cells.push(Command::Star {
                            n,
                            d,
                            k: Some(k),
                            field: field.clone(),
                        });
                    }
                }
            }
        }
        SurveyKind::Slp => {
            let (v_lo, v_hi) = parse_range(nvars_range)?;
            let (a_lo, a_hi) = parse_range(a_range)?;
            if a_lo < 2 {
                return Err(CliError::usage("monomial complete intersection exponents start at 2"));
            }
            for len in v_lo.max(1)..=v_hi {
                for t in tuples(len, a_lo, a_hi) {
                    cells.push(Command::Slp {
                        source: SourceArgs {
                            ci: Some(t),
                            ..SourceArgs::default()
                        },
                        field: field.clone(),
                        primes: default_primes(),
                        seed: default_seed(),
                        linear: None,
                    });
                }
            }
        }
        SurveyKind::Arith => {
            for d in d_lo..=d_hi {
                cells.push(Command::ArithCheck {
                    d_range: format!("{d}..{d}"),
                });
            }
        }
    }
    if cells.is_empty() {
        return Err(CliError::usage("the survey grid is empty"));
    }
    Ok(cells)
}

fn cell_passes(kind: SurveyKind, payload: &Value) -> bool {
    match kind {
        SurveyKind::Hilbert => payload["smooth"] == json!(true) && payload["symmetric"] == json!(true),
        SurveyKind::Star => payload["injective"] == json!(true),
        SurveyKind::Slp => payload["slp"] == json!(true),
        SurveyKind::Arith => payload["all_pass"] == json!(true),
    }
}

fn read_records(path: &Path) -> CliResult<Vec<RunRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        // A torn final line from an interrupted run is recomputed.
        if let Ok(rec) = serde_json::from_str::<RunRecord>(&line) {
            out.push(rec);
        }
    }
    Ok(out)
}

/// Cuts an unterminated final line left by an interrupted run.
fn drop_torn_tail(path: &Path) -> CliResult<()> {
    if !path.exists() {
        return Ok(());
    }
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    if bytes.last().is_none_or(|&b| b == b'\n') {
        return Ok(());
    }
    let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    let file = OpenOptions::new()
        .write(true)
        .open(path)
        .map_err(|e| CliError::io(path, e))?;
    file.set_len(keep as u64).map_err(|e| CliError::io(path, e))
}

fn run_cell(kind: SurveyKind, cell: &Command) -> CliResult<RunRecord> {
    let start = Instant::now();
    let (cfg, payload) = run_command(cell)?;
    let pass = cell_passes(kind, &payload);
    let mut rec = RunRecord::new(cfg, payload, start.elapsed().as_millis());
    rec.pass = Some(pass);
    Ok(rec)
}

/// Runs every cell not already present in the JSONL file and appends the
/// new records in grid order, one batch at a time.
pub fn run_survey(cmd: &Command) -> CliResult<(RunConfig, Value)> {
    let Command::Survey {
        kind,
        jsonl,
        n_range,
        d_range,
        nvars_range,
        a_range,
        field,
    } = cmd
    else {
        return Err(CliError::Internal("not a survey".into()));
    };
    let kind = *kind;
    let _ = (n_range, d_range, nvars_range, a_range, field);
    let cfg = survey_config(cmd);
    let cells = survey_cells(cmd)?;
    let existing = read_records(jsonl)?;
    let done: BTreeSet<String> = existing.iter().map(|r| r.config_hash.clone()).collect();
    let pending: Vec<(&Command, String)> = cells
        .iter()
        .map(|c| Ok((c, run_command_config(c)?.hash())))
        .collect::<CliResult<Vec<_>>>()?
        .into_iter()
        .filter(|(_, h)| !done.contains(h))
        .collect();

    drop_torn_tail(jsonl)?;
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(jsonl)
        .map_err(|e| CliError::io(jsonl, e))?;
    let batch = rayon::current_num_threads().max(1);
    let mut written = 0;
    for chunk in pending.chunks(batch) {
        let records = chunk
            .par_iter()
            .map(|(c, _)| run_cell(kind, c))
            .collect::<CliResult<Vec<_>>>()?;
        for rec in records {
            let line = serde_json::to_string(&rec).map_err(|e| CliError::Internal(e.to_string()))?;
            writeln!(file, "{line}").map_err(|e| CliError::io(jsonl, e))?;
            written += 1;
        }
        file.flush().map_err(|e| CliError::io(jsonl, e))?;
    }

    let wanted: BTreeSet<String> = cells
        .iter()
        .map(|c| Ok(run_command_config(c)?.hash()))
        .collect::<CliResult<_>>()?;
    let records: Vec<RunRecord> = read_records(jsonl)?
        .into_iter()
        .filter(|r| wanted.contains(&r.config_hash))
        .collect();
    let failed: Vec<&str> = records
        .iter()
        .filter(|r| !cell_passes(kind, &r.payload))
        .map(|r| r.config_hash.as_str())
        .collect();
    let payload = json!({
        "cells": cells.len(),
        "skipped": cells.len() - pending.len(),
        "written": written,
        "passed": records.len() - failed.len(),
        "failed": failed,
        "all_pass": failed.is_empty() && records.len() == cells.len(),
    });
    Ok((cfg, payload))
}

fn run_command_config(cmd: &Command) -> CliResult<RunConfig> {
    crate::commands::resolve_config(cmd)
}

pub fn survey_config(cmd: &Command) -> RunConfig {
    match cmd {
        Command::Survey {
            kind,
            n_range,
            d_range,
            nvars_range,
            a_range,
            field,
            ..
        } => RunConfig::new("survey")
            .param("kind", format!("{kind:?}").to_lowercase())
            .param("n_range", n_range)
            .param("d_range", d_range)
            .param("nvars_range", nvars_range)
            .param("a_range", a_range)
            .param("field", field.field.to_string()),
        _ => RunConfig::new("survey"),
    }
}
