//! The machine-readable report printed by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Inapplicable,
    BudgetExceeded,
    /// A verification suite had a failing check.
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub seed: Option<u64>,
    pub cap: u64,
    pub nodes: u64,
}

impl Environment {
    pub fn new(seed: Option<u64>, cap: u64, nodes: u64) -> Self {
        Environment { version: env!("CARGO_PKG_VERSION").to_string(), seed, cap, nodes }
    }
}

/// `{query, results[], environment, status}`; big integers inside results
/// are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub query: Value,
    pub results: Vec<Value>,
    pub environment: Environment,
    pub status: Status,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
