use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

/// Record of one invocation, written next to its outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<PathBuf>,
    pub wall_time_ms: u128,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub summary: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: &str, params: Value) -> Self {
        RunManifest {
            command: command.to_owned(),
            params,
            inputs: Vec::new(),
            outputs: Vec::new(),
            wall_time_ms: 0,
            exit_code: 0,
            workers: None,
            summary: Value::Null,
            error: None,
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        }
    }

    /// Hashes each existing input. Missing files are left for the command
    /// to report.
    pub fn digest_inputs(&mut self, paths: &[&Path]) {
        for path in paths {
            if let Ok(bytes) = fs::read(path) {
                self.inputs.push(InputDigest {
                    path: path.to_path_buf(),
                    sha256: hex::encode(Sha256::digest(&bytes)),
                });
            }
        }
    }

    pub fn finish(&mut self, elapsed: Duration, exit_code: u8) {
        self.wall_time_ms = elapsed.as_millis();
        self.exit_code = exit_code;
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        fs::write(path, text).with_context(|| format!("writing manifest {}", path.display()))
    }
}
