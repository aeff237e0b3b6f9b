//! Experiment runner for `irs-ssm`.
//!
//! Reads TOML run configurations, runs seeded Monte Carlo campaigns over a
//! parameter grid, writes one CSV of per-trial records and one JSON summary
//! per campaign, and hosts the oracle suites behind `irs-ssm validate`.

use std::path::{Path, PathBuf};

pub mod config;
pub mod experiment;
pub mod oracles;
pub mod output;
pub mod stats;
pub mod validate;

pub use config::{ExperimentKind, ExperimentSpec, GridPoint, Method, RunConfig, SystemSection};
pub use experiment::{run_experiment, Campaign, ExperimentRecord};
pub use output::{CampaignSummary, GroupSummary};

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] irs_ssm::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl HarnessError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
