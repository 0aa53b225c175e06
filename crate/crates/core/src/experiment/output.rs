use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::experiment::config::{ExperimentConfig, OutputFormat};
use crate::experiment::runner::{Status, Table};
use crate::experiment::ExperimentError;

/// Environment variable that overrides the configured output directory.
pub const OUT_DIR_ENV: &str = "PARABOLIC_LAB_OUT";

/// Run metadata written next to the table.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub experiment: String,
    pub crate_version: String,
    pub config: ExperimentConfig,
    pub seed: Option<u64>,
    pub threads: usize,
    pub wall_time_seconds: f64,
    pub started_unix_seconds: u64,
    pub rows: usize,
    pub ok: usize,
    pub diverged: usize,
    pub nonconverged: usize,
    pub heavy_tail: usize,
    pub files: Vec<String>,
}

impl Manifest {
    pub fn new(config: &ExperimentConfig, table: &Table, threads: usize, wall: f64, started: u64) -> Self {
        Manifest {
            experiment: config.experiment.name().to_string(),
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            seed: config.numerics.seed,
            threads,
            wall_time_seconds: wall,
            started_unix_seconds: started,
            rows: table.rows.len(),
            ok: table.count(Status::Ok),
            diverged: table.count(Status::Diverged),
            nonconverged: table.count(Status::NonConverged),
            heavy_tail: table.count(Status::HeavyTail),
            files: Vec::new(),
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> ExperimentError {
    ExperimentError::Io(format!("{}: {e}", path.display()))
}

/// Writes `<experiment>.csv`, the optional JSON mirror and `manifest.json`
/// into `dir`, creating it if needed. Returns the written paths.
pub fn write_outputs(
    dir: &Path,
    table: &Table,
    format: OutputFormat,
    manifest: &mut Manifest,
) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let name = table.experiment.name();
    let mut written = Vec::new();

    let csv_path = dir.join(format!("{name}.csv"));
    let mut writer = csv::Writer::from_path(&csv_path).map_err(|e| io_err(&csv_path, e))?;
    let mut header: Vec<&str> = table.columns.clone();
    header.push("status");
    writer.write_record(&header).map_err(|e| io_err(&csv_path, e))?;
    for (row, status) in table.rows.iter().zip(&table.statuses) {
        let mut record: Vec<String> = row.iter().map(|v| v.to_csv()).collect();
        record.push(status.as_str().to_string());
        writer.write_record(&record).map_err(|e| io_err(&csv_path, e))?;
    }
    writer.flush().map_err(|e| io_err(&csv_path, e))?;
    written.push(csv_path);

    if format == OutputFormat::CsvJson {
        let json_path = dir.join(format!("{name}.json"));
        let rows: Vec<serde_json::Value> = table
            .rows
            .iter()
            .zip(&table.statuses)
            .map(|(row, status)| {
                let mut obj = serde_json::Map::new();
                for (col, v) in table.columns.iter().zip(row) {
                    obj.insert(col.to_string(), v.to_json());
                }
                obj.insert("status".into(), serde_json::json!(status.as_str()));
                serde_json::Value::Object(obj)
            })
            .collect();
        let text = serde_json::to_string_pretty(&rows).map_err(|e| io_err(&json_path, e))?;
        fs::write(&json_path, text).map_err(|e| io_err(&json_path, e))?;
        written.push(json_path);
    }

    let manifest_path = dir.join("manifest.json");
    manifest.files = written
        .iter()
        .chain(std::iter::once(&manifest_path))
        .filter_map(|p| p.file_name().map(|f| f.to_string_lossy().into_owned()))
        .collect();
    let text = serde_json::to_string_pretty(manifest).map_err(|e| io_err(&manifest_path, e))?;
    fs::write(&manifest_path, text).map_err(|e| io_err(&manifest_path, e))?;
    written.push(manifest_path);
    Ok(written)
}
