//! Report assembly and file output conventions.
//!
//! Every report is one JSON object with `"schema": 1`, the effective
//! parameters of the run (seed always included), and the measured wall time
//! under the single `"timing"` key. Everything outside `"timing"` is a pure
//! function of the inputs and the seed, so re-running a command reproduces
//! the report byte for byte once that key is dropped — numbers are emitted
//! in the serializer's exact shortest round-trip form, which parsing
//! recovers bit for bit.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use coreset_core::CenterSet;
use serde_json::{json, Map, Value};

use crate::CliError;

/// Report format version stamped into every JSON output.
pub const SCHEMA_VERSION: u64 = 1;

/// The pair of artifact paths a stem expands to: `<stem>.csv` for point
/// data and `<stem>.json` for the report or certificate.
#[derive(Debug, Clone)]
pub struct OutputPaths {
    pub csv: PathBuf,
    pub json: PathBuf,
}

impl OutputPaths {
    /// Expands an `--output` stem. A stem that already ends in `.csv` or
    /// `.json` is used as the stem without that extension.
    pub fn from_stem(stem: &Path) -> Self {
        let base = match stem.extension().and_then(|e| e.to_str()) {
            Some("csv") | Some("json") => stem.with_extension(""),
            _ => stem.to_path_buf(),
        };
        OutputPaths {
            csv: base.with_extension("csv"),
            json: base.with_extension("json"),
        }
    }
}

/// Serializes a report and writes it with a trailing newline, creating
/// parent directories as needed.
pub fn write_json(path: &Path, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

/// Writes a text artifact, creating parent directories as needed.
pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Writes the report to the path, or to stdout when no path was given.
pub fn emit(value: &Value, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => write_json(path, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

/// Finishes a report: stamps the schema version, sorts nothing (the map is
/// already deterministic), and attaches the wall time as the separate
/// `"timing"` field.
pub fn finish(mut body: Map<String, Value>, started: Instant) -> Value {
    body.insert("schema".into(), json!(SCHEMA_VERSION));
    body.insert(
        "timing".into(),
        json!({ "seconds": started.elapsed().as_secs_f64() }),
    );
    Value::Object(body)
}

/// A center set as nested JSON arrays, one row per center.
pub fn centers_json(centers: &CenterSet) -> Value {
    let rows: Vec<Vec<f64>> = (0..centers.k()).map(|i| centers.center(i).to_vec()).collect();
    json!(rows)
}

/// Strips the `"timing"` field; what remains must be byte-identical across
/// reruns with the same seed and inputs.
pub fn without_timing(report: &Value) -> Value {
    let mut copy = report.clone();
    if let Some(map) = copy.as_object_mut() {
        map.remove("timing");
    }
    copy
}
