//! `manifest.json`: provenance and timing for each pipeline stage.
//!
//! Each subcommand records its own stage entry and keeps the others, so one
//! output directory accumulates the whole pipeline. Timings live only here,
//! never in data files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;
pub const FILE_NAME: &str = "manifest.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub stages: BTreeMap<String, RunManifest>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: serde_json::Value,
    /// `sha256:<hex>` of the stage's primary input.
    pub input_digest: Option<String>,
    pub record_count: usize,
    pub node_count: usize,
    pub edge_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub malformed_lines: Option<usize>,
    pub outputs: BTreeMap<String, PathBuf>,
    pub timing_ms: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn new(config: &RunConfig) -> Self {
        RunManifest {
            config: serde_json::to_value(config).expect("config serializes"),
            ..Default::default()
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Merges `stage` into the manifest in `out_dir`, replacing any earlier
/// entry for the same stage. An unreadable or foreign manifest is replaced.
pub fn record(out_dir: &Path, stage: &str, run: RunManifest) -> Result<(), CliError> {
    let path = out_dir.join(FILE_NAME);
    let mut manifest = std::fs::read_to_string(&path)
        .ok()
        .and_then(|text| serde_json::from_str::<Manifest>(&text).ok())
        .filter(|m| m.schema_version == SCHEMA_VERSION)
        .unwrap_or(Manifest {
            schema_version: SCHEMA_VERSION,
            stages: BTreeMap::new(),
        });
    manifest.stages.insert(stage.to_owned(), run);
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))
}
