use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const FILE_NAME: &str = "manifest.json";

#[derive(Debug, Serialize)]
pub struct InputFile {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
}

/// Everything needed to reproduce a command's outputs. Deliberately free of
/// timestamps and host details so reruns produce identical bytes.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub inputs: Vec<InputFile>,
    pub corpus_sha256: String,
    pub parameters: serde_json::Value,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &'static str, parameters: impl Serialize) -> Result<Self> {
        Ok(Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs: Vec::new(),
            corpus_sha256: String::new(),
            parameters: serde_json::to_value(parameters)?,
            outputs: Vec::new(),
        })
    }

    pub fn add_input(&mut self, role: &'static str, path: &Path, bytes: &[u8]) {
        self.inputs.push(InputFile { role, path: path.display().to_string(), sha256: sha256_hex(bytes) });
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        let path = dir.join(FILE_NAME);
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
