use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Record of one invocation, written to standard error as a JSON line.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub input_hash: String,
    pub parameters: BTreeMap<&'static str, Value>,
    pub outcome: String,
    pub exit_code: u8,
    pub wall_time_ms: f64,
}

/// Accumulates the inputs an invocation read, in order.
#[derive(Default)]
pub struct InputHasher(Sha256);

impl InputHasher {
    pub fn feed(&mut self, label: &str, bytes: &[u8]) {
        self.0.update((label.len() as u64).to_le_bytes());
        self.0.update(label.as_bytes());
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    pub fn finish(self) -> String {
        self.0
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

pub fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}
