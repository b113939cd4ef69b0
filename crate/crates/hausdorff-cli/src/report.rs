//! Deterministic report writers: RFC-4180-style CSV with 17-significant-digit
//! floats, and pretty JSON with a manifest header. No timestamps enter the
//! payloads except the explicitly labeled solve timing block.

use anyhow::{Context, Result};
use hausdorff_calc::{Convention, QuadratureSpec};
use serde::Serialize;
use serde_json::json;
use std::path::Path;

/// 17 significant digits, enough to round-trip any f64 exactly.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// RFC-4180 quoting: only fields containing a comma, quote, or newline are
/// quoted, with inner quotes doubled.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push_str("\r\n");
    for row in rows {
        let encoded: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&encoded.join(","));
        out.push_str("\r\n");
    }
    std::fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}

/// The reproducibility header embedded in every JSON payload.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub version: String,
    pub command: String,
    pub mu: Vec<f64>,
    pub convention: Vec<Convention>,
    pub quad: QuadSummary,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct QuadSummary {
    pub points: usize,
    pub panels: usize,
}

impl Manifest {
    pub fn new(
        command: &str,
        mus: &[f64],
        conventions: &[Convention],
        quad: QuadratureSpec,
        seed: u64,
    ) -> Self {
        Manifest {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            mu: mus.to_vec(),
            convention: conventions.to_vec(),
            quad: QuadSummary {
                points: quad.points,
                panels: quad.panels,
            },
            seed,
        }
    }
}

/// Writes `{manifest, reports}` as pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, manifest: &Manifest, reports: &T) -> Result<()> {
    write_json_value(path, json!({ "manifest": manifest, "reports": reports }))
}

pub fn write_json_value(path: &Path, value: serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
