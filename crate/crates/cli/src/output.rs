//! Result records and their JSON, CSV and text renderings.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};

use serde::Serialize;
use serde_json::Value;

use crate::commands::ScanCache;
use crate::config::{ExperimentConfig, Format};
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
    pub wall_time_s: f64,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub payload: Value,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn table(rows: &[Value]) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let header: Vec<String> = rows.first()?.as_object()?.keys().cloned().collect();
    let body = rows
        .iter()
        .map(|r| header.iter().map(|k| cell(&r[k])).collect())
        .collect();
    Some((header, body))
}

fn aligned(header: &[String], body: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|j| body.iter().map(|r| r[j].chars().count()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header);
    out.push('\n');
    for r in body {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

/// Renders a record. CSV needs a payload with a `rows` table.
pub fn emit(record: &ResultRecord, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string(record).expect("records serialize")),
        Format::Csv => {
            let rows = record.payload.get("rows").and_then(Value::as_array);
            let (header, body) = rows
                .and_then(|r| table(r))
                .ok_or_else(|| CliError::Validation("format csv needs a tabular payload (kron tables, scans)".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).map_err(|e| CliError::Io(e.to_string()))?;
            for r in &body {
                w.write_record(r).map_err(|e| CliError::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
        }
        Format::Text => {
            let mut out = format!(
                "# tensorlab {} seed {} ({:.3} s)\n",
                record.version, record.seed, record.wall_time_s
            );
            let Some(obj) = record.payload.as_object() else {
                out.push_str(&cell(&record.payload));
                out.push('\n');
                return Ok(out);
            };
            let width = obj.keys().filter(|k| *k != "rows").map(String::len).max().unwrap_or(0);
            for (k, v) in obj {
                if k != "rows" {
                    out.push_str(&format!("{k:<width$}  {}\n", cell(v)));
                }
            }
            if let Some((header, body)) = obj.get("rows").and_then(Value::as_array).and_then(|r| table(r)) {
                out.push('\n');
                out.push_str(&aligned(&header, &body));
            }
            Ok(out)
        }
    }
}

/// Appends one rendering to the output file.
pub fn append(path: &str, text: &str) -> Result<(), CliError> {
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let mut t = text.to_string();
    if !t.ends_with('\n') {
        t.push('\n');
    }
    f.write_all(t.as_bytes()).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// Scan cells already present in a JSON-lines output file for the same
/// seed and trial count. Lines that are not records are skipped.
pub fn load_scan_cache(path: &str, seed: u64, trials: usize) -> Result<ScanCache, CliError> {
    let mut cache = ScanCache::new();
    let f = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
        Err(e) => return Err(CliError::Io(format!("{path}: {e}"))),
    };
    for line in BufReader::new(f).lines() {
        let line = line.map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        let Ok(rec) = serde_json::from_str::<Value>(&line) else { continue };
        let config = &rec["config"];
        if config["command"] != "terracini" || rec["seed"].as_u64() != Some(seed) {
            continue;
        }
        if config["parameters"]["trials"].as_u64() != Some(trials as u64) {
            continue;
        }
        for row in rec["payload"]["rows"].as_array().into_iter().flatten() {
            if let (Some(v), Some(r)) = (row["variety"].as_str(), row["r"].as_u64()) {
                cache.insert((v.to_string(), r as usize), row.clone());
            }
        }
    }
    Ok(cache)
}
