//! Run configuration shared by the CLI subcommands.
//!
//! Defaults can be overridden by a JSON file named through the `HGFT_CONFIG`
//! environment variable; command-line flags override both.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verification::GridSpec;

/// Environment variable naming a JSON [`RunConfig`] file.
pub const CONFIG_ENV_VAR: &str = "HGFT_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Truncation order used when generating functions.
    pub truncation: usize,
    /// Verdict tolerance for membership comparisons.
    pub tolerance: f64,
    /// Seed for random generation.
    pub seed: u64,
    pub format: OutputFormat,
    /// Output path; stdout when absent.
    pub out: Option<PathBuf>,
    pub grid: GridSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            truncation: 16,
            tolerance: 1e-9,
            seed: 42,
            format: OutputFormat::Json,
            out: None,
            grid: GridSpec::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.truncation < 2 {
            return Err(Error::InvalidParameter(
                "configured truncation must be >= 2".into(),
            ));
        }
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::InvalidParameter(
                "configured tolerance must be > 0".into(),
            ));
        }
        self.grid.validate()?;
        Ok(())
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: Self = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    /// Defaults, or the file named by `HGFT_CONFIG` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV_VAR) {
            Some(path) => Self::from_path(std::path::Path::new(&path)),
            None => Ok(Self::default()),
        }
    }
}
