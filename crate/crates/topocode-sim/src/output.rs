//! Result files: `results.csv`, `summary.csv` and `manifest.json`.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::HarnessError;
use crate::experiment::{ExperimentSpec, RunOutput};

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
        .map_err(HarnessError::io(format!("writing {}", path.display())))
}

pub fn manifest(spec: &ExperimentSpec, output: &RunOutput) -> Value {
    json!({
        "tool": "topocode",
        "version": env!("CARGO_PKG_VERSION"),
        "config": spec.to_json(),
        "seed": spec.seed,
        "files": {
            "results": RESULTS_FILE,
            "summary": SUMMARY_FILE,
        },
        "rows": output.rows.len(),
    })
}

/// Writes the three result files into `dir`, creating it if needed.
pub fn write_run(
    dir: &Path,
    spec: &ExperimentSpec,
    output: &RunOutput,
) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(dir).map_err(HarnessError::io(format!("creating {}", dir.display())))?;
    let results = dir.join(RESULTS_FILE);
    let summary = dir.join(SUMMARY_FILE);
    let manifest_path = dir.join(MANIFEST_FILE);
    write_csv(&results, &output.header, &output.rows)?;
    write_csv(&summary, &output.summary_header, &output.summary_rows)?;
    let text = serde_json::to_string_pretty(&manifest(spec, output))?;
    fs::write(&manifest_path, text + "\n")
        .map_err(HarnessError::io(format!("writing {}", manifest_path.display())))?;
    Ok(vec![results, summary, manifest_path])
}

/// Reads the experiment spec back out of a manifest.
pub fn read_manifest(path: &Path) -> Result<ExperimentSpec, HarnessError> {
    if !path.exists() {
        return Err(HarnessError::ConfigInvalid(format!(
            "manifest {} does not exist",
            path.display()
        )));
    }
    let text = fs::read_to_string(path).map_err(HarnessError::io(format!("reading {}", path.display())))?;
    let value: Value = serde_json::from_str(&text)?;
    ExperimentSpec::from_json(&value["config"])
}
