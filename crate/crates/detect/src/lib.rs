//! Benign-vs-poisoned record classification.
//!
//! The main detector is a from-scratch gradient-boosted tree ensemble:
//! logistic loss, equal-frequency histogram split candidates, leaf-wise
//! growth with a leaf budget and depth cap, per-round seeded row
//! subsampling. Hyperparameters are tuned by stratified k-fold grid
//! search on F1. A batch-GD logistic regression rides along as the
//! comparison baseline.

mod binning;
mod boost;
mod error;
mod grid;
mod logistic;
mod metrics;
mod params;
mod tree;

pub use binning::FeatureBins;
pub use boost::{logistic_loss, train_gbdt, GbdtModel};
pub use error::DetectError;
pub use grid::{grid_from_json_file, grid_search, stratified_folds, GridSearchResult};
pub use logistic::{baseline_loss, train_logistic_baseline, LogisticBaseline};
pub use metrics::{classification_metrics, ClassificationMetrics, Confusion};
pub use params::GbdtParams;
pub use tree::{Node, Tree};
