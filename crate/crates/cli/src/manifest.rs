//! Run manifests: one JSON sidecar per file-producing run, recording the
//! command, its parameters, the seed, the generator version, and the output
//! paths. Re-running the command with the manifest's parameters reproduces
//! the data outputs byte for byte (the manifest timestamp is the only
//! non-reproducible field, and it lives here, not in the data).

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::json17;
use crate::output::atomic_write;

#[derive(Serialize)]
pub struct RunManifest {
    pub schema: u32,
    pub command: String,
    /// Flag values keyed by flag name, deterministic order.
    pub parameters: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stream: Option<u64>,
    pub generator_version: String,
    pub timestamp: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            schema: 1,
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed: None,
            stream: None,
            generator_version: powprod::GENERATOR_VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    /// Writes the manifest next to `out` as `<out>.manifest.json`.
    pub fn write_for(&self, out: &Path) -> std::io::Result<()> {
        let path = manifest_path(out);
        let text = json17::to_string(self).expect("manifest serialization cannot fail");
        atomic_write(&path, text.as_bytes())
    }
}

pub fn manifest_path(out: &Path) -> std::path::PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".manifest.json");
    std::path::PathBuf::from(name)
}
