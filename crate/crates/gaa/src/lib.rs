//! Experiment runner for generalized Aubry-André quench dynamics.
//!
//! Reads TOML experiment descriptions, evaluates parameter sweeps on a rayon
//! pool and writes the CSV tables plus a `manifest.json` for each run.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod pool;
pub mod runner;

use std::path::PathBuf;

pub use config::{parse_config, parse_config_as, ExperimentConfig, ExperimentKind};
pub use pool::Pool;
pub use runner::{run, run_with, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("could not parse configuration: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Model(#[from] gaa_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}
