use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::files::write_json;
use super::RunConfig;
use crate::analysis::Engine;
use crate::error::Result;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestPoint {
    pub engine: Engine,
    pub theta: f64,
    pub d: f64,
    pub status: String,
}

/// Everything needed to rerun a batch: config snapshot, seed, version and
/// per-point outcomes. Timestamps are Unix seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub config: RunConfig,
    pub started_at: u64,
    pub finished_at: Option<u64>,
    pub points: Vec<ManifestPoint>,
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl RunManifest {
    pub fn start(command: &str, config: &RunConfig) -> Self {
        RunManifest {
            version: ARTIFACT_VERSION.to_string(),
            command: command.to_string(),
            seed: config.seed,
            config: config.clone(),
            started_at: now(),
            finished_at: None,
            points: Vec::new(),
        }
    }

    pub fn finish(&mut self) {
        self.finished_at = Some(now());
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        write_json(&dir.join("manifest.json"), self)
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(dir.join("manifest.json"))?;
        serde_json::from_str(&text).map_err(|e| crate::QdoError::Config(e.to_string()))
    }
}
