//! Run manifests and report emission.
//!
//! Every command produces a [`Report`]: a manifest (command, parameters,
//! tolerances, seed, per-check PASS/FAIL) plus a result payload.  Two runs
//! with identical manifests produce byte-identical JSON except for the
//! `timing` field, which is kept separate for exactly that reason.

use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Serialize, Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.to_string(), pass, detail: detail.into() }
    }
}

#[derive(Serialize, Debug)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub q: u32,
    pub tolerance: f64,
    pub seed: u64,
    pub version: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Serialize, Debug)]
pub struct Timing {
    pub wall_ms: u128,
    pub timestamp_unix: u64,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub manifest: RunManifest,
    pub result: serde_json::Value,
    pub timing: Timing,
}

impl Report {
    pub fn new(manifest: RunManifest, result: serde_json::Value, wall_ms: u128) -> Self {
        let timestamp_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report { manifest, result, timing: Timing { wall_ms, timestamp_unix } }
    }

    pub fn all_pass(&self) -> bool {
        self.manifest.checks.iter().all(|c| c.pass)
    }

    /// Optional CSV rendering of table-like results.
    pub fn to_csv(&self) -> Option<String> {
        let mut lines = Vec::new();
        match self.result.get("csv_rows") {
            Some(serde_json::Value::Array(rows)) => {
                for row in rows {
                    if let serde_json::Value::Array(fields) = row {
                        let line: Vec<String> = fields
                            .iter()
                            .map(|f| match f {
                                serde_json::Value::String(s) => s.clone(),
                                other => other.to_string(),
                            })
                            .collect();
                        lines.push(line.join(","));
                    }
                }
                Some(lines.join("\n") + "\n")
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn emit(report: &Report, format: Format, out_dir: Option<&PathBuf>) -> anyhow::Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
        Format::Csv => match report.to_csv() {
            Some(csv) => print!("{csv}"),
            None => {
                // Fall back to the check table.
                println!("check,pass,detail");
                for c in &report.manifest.checks {
                    println!("{},{},{}", c.name, c.pass, c.detail.replace(',', ";"));
                }
            }
        },
        Format::Text => {
            if let Some(text) = report.result.get("text").and_then(|t| t.as_str()) {
                println!("{text}");
            } else {
                println!("{}", serde_json::to_string(&report.result)?);
            }
            for c in &report.manifest.checks {
                println!(
                    "[{}] {} {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
        }
    }
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        let base = report.manifest.command.replace(' ', "-");
        let json_path = dir.join(format!("{base}.json"));
        let mut f = std::fs::File::create(&json_path)?;
        writeln!(f, "{}", serde_json::to_string_pretty(report)?)?;
        if let Some(csv) = report.to_csv() {
            std::fs::write(dir.join(format!("{base}.csv")), csv)?;
        }
    }
    Ok(())
}
