//! Multi-view classification harness: per-view Gaussian naive Bayes,
//! Bayesian BPAs per view, evidence fusion and repeated stratified
//! cross-validation.

pub mod cv;
pub mod dataset;
pub mod gnb;
pub mod protocol;
pub mod scaler;

use std::path::PathBuf;

pub use cv::{run_cv, CvReport, ExperimentConfig, Method, TunedFamily};
pub use dataset::{load_csv, DatasetTable};
pub use gnb::GnbModel;
pub use protocol::{BorrowStrategy, Partition, ViewProtocol};
pub use scaler::StandardScaler;

/// Path of a dataset shipped with the crate, e.g. `bundled_dataset("wine")`.
pub fn bundled_dataset(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{stem}.csv"))
}
