use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub x: f64,
    pub y: f64,
    pub series: String,
}

impl Row {
    pub fn new(x: f64, y: f64, series: impl Into<String>) -> Self {
        Self { x, y, series: series.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Metadata {
    pub config: ExperimentConfig,
    pub seeds: Vec<u64>,
    pub git_describe: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    /// Scalar results (fitted slopes, KS statistics, check counts).
    pub summary: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOutput {
    pub metadata: Metadata,
    pub rows: Vec<Row>,
}

impl SeriesOutput {
    pub fn new(config: &ExperimentConfig, seeds: Vec<u64>, rows: Vec<Row>, summary: BTreeMap<String, f64>) -> Self {
        let metadata = Metadata {
            config: config.clone(),
            seeds,
            git_describe: git_describe(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            summary,
        };
        Self { metadata, rows }
    }

    /// Rows of one series, in output order.
    pub fn series(&self, label: &str) -> Vec<&Row> {
        self.rows.iter().filter(|r| r.series == label).collect()
    }

    /// Writes the CSV and its JSON sidecar; returns both paths.
    pub fn write(&self, csv_path: &Path) -> Result<(PathBuf, PathBuf)> {
        if let Some(dir) = csv_path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let mut w = csv::Writer::from_path(csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        let side = sidecar_path(csv_path);
        let json = serde_json::to_string_pretty(&self.metadata)?;
        fs::write(&side, json + "\n").with_context(|| format!("writing {}", side.display()))?;
        Ok((csv_path.to_path_buf(), side))
    }
}

/// `results.csv` → `results.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

fn git_describe() -> String {
    Command::new("git")
        .args(["describe", "--always", "--dirty", "--tags"])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".into())
}
