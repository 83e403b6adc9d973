//! Experiment orchestration for fastinf: dataset fetching, cached
//! simulation, evaluation grids and report emission.

pub mod cache;
pub mod catalog;
pub mod fetch;
pub mod report;
pub mod run;
pub mod spec;

use std::io;
use std::path::{Path, PathBuf};

use fastinf_core::{CentralityError, EpidemicError, EvalError, GraphError};
use thiserror::Error;

pub use cache::{CacheStats, InfluenceCache};
pub use run::{analyze_dataset, load_dataset, run_experiment, Bundle, Manifest};
pub use spec::{DatasetSpec, ExperimentSpec, Overrides};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid experiment: {0}")]
    Spec(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("fetching {url}: {message}")]
    Fetch { url: String, message: String },
    #[error("integrity check failed for {url}: expected sha256 {expected}, got {actual}")]
    Integrity { url: String, expected: String, actual: String },
    #[error("malformed {what} {path}: {message}")]
    Format { what: String, path: PathBuf, message: String },
    #[error("{name} has {nodes} nodes and needs about {runs} simulated runs; pass --allow-large to proceed")]
    TooLarge { name: String, nodes: usize, runs: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error(transparent)]
    Epidemic(#[from] EpidemicError),
    #[error(transparent)]
    Evaluation(#[from] EvalError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("write failed: {0}")]
    Stream(#[from] io::Error),
}

impl PipelineError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        PipelineError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
