use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Resolved hypersurface source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceSpec {
    Fermat { n: usize, d: usize },
    Poly { text: String, path: Option<String> },
    Random { n: usize, d: usize, seed: u64 },
    MonomialCi { exponents: Vec<usize> },
}

/// Everything that determines a result payload. Thread count and output
/// paths are deliberately absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<SourceSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub primes: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub params: BTreeMap<String, Value>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            source: None,
            field: None,
            primes: None,
            seed: None,
            samples: None,
            params: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable parameter"),
        );
        self
    }

    /// Stable hex digest of the canonical JSON form.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("serializable config");
        format!("{:016x}", jacring_core::rng::label_key(&text))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub version: String,
    pub config: RunConfig,
    pub config_hash: String,
    pub command: String,
    pub payload: Value,
    pub wall_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pass: Option<bool>,
}

impl RunRecord {
    pub fn new(config: RunConfig, payload: Value, wall_ms: u128) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunRecord {
            timestamp,
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: config.hash(),
            command: config.command.clone(),
            config,
            payload,
            wall_ms,
            pass: None,
        }
    }
}
