use std::path::Path;

use clap::ValueEnum;
use eigencone::tensoracle::OracleBudget;
use serde::{Deserialize, Serialize};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "EIGENCONE_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct BudgetConfig {
    pub max_dim: u64,
    pub max_support: usize,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        let b = OracleBudget::default();
        BudgetConfig { max_dim: b.max_dim, max_support: b.max_support }
    }
}

impl From<BudgetConfig> for OracleBudget {
    fn from(b: BudgetConfig) -> Self {
        OracleBudget { max_dim: b.max_dim, max_support: b.max_support }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyToggles {
    /// Re-check regularly extremal witnesses with the cup-product oracle.
    pub cup: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub group: Option<String>,
    pub scaling_depth: u32,
    pub weight_bound: i64,
    pub format: Format,
    pub oracle: BudgetConfig,
    pub verify: VerifyToggles,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: None,
            scaling_depth: 3,
            weight_bound: 2,
            format: Format::Text,
            oracle: BudgetConfig::default(),
            verify: VerifyToggles::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(s: &str) -> Result<Self, String> {
        toml::from_str(s).map_err(|e| e.to_string())
    }

    #[cfg(test)]
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
