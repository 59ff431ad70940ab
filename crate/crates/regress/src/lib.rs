//! Least-squares linear regression for pathloss prediction.
//!
//! Fitting standardizes features on the training split and solves the
//! normal equations; the per-record squared-error loss has the closed-form
//! input gradient 2*(prediction - target)*w, which is what the
//! gradient-based attacks consume.

mod error;
mod metrics;
mod model;

pub use error::RegressError;
pub use metrics::{regression_metrics, RegressionMetrics};
pub use model::{fit_least_squares, fit_records, FeatureScaler, LinearModel, RIDGE_LAMBDA};
