//! Linear pathloss model: normal-equation fitting over standardized
//! features, prediction, and the analytic gradient of the per-record
//! squared error with respect to the (standardized) input.

use std::path::Path;

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use plr_data::{Record, RecordSet, FEATURE_COUNT};

use crate::error::RegressError;

/// Ridge term added to the Gram matrix when it is not positive definite.
pub const RIDGE_LAMBDA: f64 = 1e-8;

/// Per-feature standardization fitted on training data. Constant features
/// get std = 1 (and a forced zero weight in the model).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureScaler {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    /// Max - min of each feature in standardized units; feature-scaled
    /// attack budgets multiply by this.
    pub range_std: Vec<f64>,
}

impl FeatureScaler {
    pub fn fit(features: &[[f64; FEATURE_COUNT]]) -> Self {
        let n = features.len() as f64;
        let mut mean = [0.0; FEATURE_COUNT];
        let mut lo = [f64::INFINITY; FEATURE_COUNT];
        let mut hi = [f64::NEG_INFINITY; FEATURE_COUNT];
        for row in features {
            for (j, v) in row.iter().enumerate() {
                mean[j] += v;
                lo[j] = lo[j].min(*v);
                hi[j] = hi[j].max(*v);
            }
        }
        for m in mean.iter_mut() {
            *m /= n;
        }
        let mut var = [0.0; FEATURE_COUNT];
        for row in features {
            for (j, v) in row.iter().enumerate() {
                let d = v - mean[j];
                var[j] += d * d;
            }
        }
        let std: Vec<f64> = var
            .iter()
            .map(|v| {
                let s = (v / n).sqrt();
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        let range_std = (0..FEATURE_COUNT)
            .map(|j| (hi[j] - lo[j]) / std[j])
            .collect();
        Self {
            mean: mean.to_vec(),
            std,
            range_std,
        }
    }

    pub fn standardize(&self, feats: &[f64; FEATURE_COUNT]) -> [f64; FEATURE_COUNT] {
        let mut out = [0.0; FEATURE_COUNT];
        for j in 0..FEATURE_COUNT {
            out[j] = (feats[j] - self.mean[j]) / self.std[j];
        }
        out
    }

    pub fn destandardize(&self, scaled: &[f64; FEATURE_COUNT]) -> [f64; FEATURE_COUNT] {
        let mut out = [0.0; FEATURE_COUNT];
        for j in 0..FEATURE_COUNT {
            out[j] = scaled[j] * self.std[j] + self.mean[j];
        }
        out
    }
}

/// Fitted pathloss regressor: one weight per standardized feature plus a
/// bias. Immutable once fitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub scaler: FeatureScaler,
    /// Set when the Gram matrix needed the ridge fallback.
    pub ridge_fallback: bool,
}

impl LinearModel {
    /// Prediction from an already-standardized feature vector.
    pub fn predict_standardized(&self, scaled: &[f64; FEATURE_COUNT]) -> f64 {
        let mut acc = self.bias;
        for (w, x) in self.weights.iter().zip(scaled.iter()) {
            acc += w * x;
        }
        acc
    }

    pub fn predict_features(&self, feats: &[f64; FEATURE_COUNT]) -> Result<f64, RegressError> {
        if feats.iter().any(|v| !v.is_finite()) {
            return Err(RegressError::NonFiniteFeature);
        }
        Ok(self.predict_standardized(&self.scaler.standardize(feats)))
    }

    pub fn predict(&self, record: &Record) -> Result<f64, RegressError> {
        self.predict_features(&record.features())
    }

    /// Gradient of J(x) = (predict(x) - target)^2 with respect to the
    /// standardized input: 2 * residual * w.
    pub fn loss_gradient_wrt_input(
        &self,
        record: &Record,
        target: f64,
    ) -> Result<[f64; FEATURE_COUNT], RegressError> {
        let residual = self.predict(record)? - target;
        let mut g = [0.0; FEATURE_COUNT];
        for (j, w) in self.weights.iter().enumerate() {
            g[j] = 2.0 * residual * w;
        }
        Ok(g)
    }

    pub fn to_json_file(&self, path: &Path) -> Result<(), RegressError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).map_err(|e| RegressError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }

    pub fn from_json_file(path: &Path) -> Result<Self, RegressError> {
        let text = std::fs::read_to_string(path).map_err(|e| RegressError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let model: LinearModel = serde_json::from_str(&text)?;
        if model.weights.len() != FEATURE_COUNT {
            return Err(RegressError::BadModel(format!(
                "expected {FEATURE_COUNT} weights, found {}",
                model.weights.len()
            )));
        }
        Ok(model)
    }
}

/// Least-squares fit on standardized features via the normal equations.
/// A rank-deficient design falls back to ridge with lambda = 1e-8, flagged
/// on the returned model.
pub fn fit_least_squares(train: &RecordSet) -> Result<LinearModel, RegressError> {
    fit_records(train.records())
}

/// Fit over a bare record slice. Perturbed records are allowed here; the
/// poisoning pipeline refits on data that no longer passes the dataset
/// invariants.
pub fn fit_records(records: &[Record]) -> Result<LinearModel, RegressError> {
    let rows: Vec<[f64; FEATURE_COUNT]> = records.iter().map(|r| r.features()).collect();
    let targets: Vec<f64> = records.iter().map(|r| r.pathloss).collect();
    if rows.len() <= FEATURE_COUNT {
        return Err(RegressError::TooFewRows {
            rows: rows.len(),
            need: FEATURE_COUNT + 1,
        });
    }
    let scaler = FeatureScaler::fit(&rows);

    // constant columns are excluded from the solve and forced to zero
    let active: Vec<usize> = (0..FEATURE_COUNT)
        .filter(|&j| scaler.range_std[j] > 0.0)
        .collect();
    let n = rows.len();
    let y_mean = targets.iter().sum::<f64>() / n as f64;

    let mut design = DMatrix::zeros(n, active.len());
    for (i, row) in rows.iter().enumerate() {
        let scaled = scaler.standardize(row);
        for (k, &j) in active.iter().enumerate() {
            design[(i, k)] = scaled[j];
        }
    }
    let y_centered = DVector::from_iterator(n, targets.iter().map(|t| t - y_mean));

    let gram = design.transpose() * &design;
    let rhs = design.transpose() * y_centered;
    let (solution, ridge_fallback) = match Cholesky::new(gram.clone()) {
        Some(chol) => (chol.solve(&rhs), false),
        None => {
            let ridged = gram + DMatrix::identity(active.len(), active.len()) * RIDGE_LAMBDA;
            let chol = Cholesky::new(ridged).ok_or_else(|| {
                RegressError::BadModel("gram matrix not solvable even with ridge".into())
            })?;
            (chol.solve(&rhs), true)
        }
    };

    let mut weights = vec![0.0; FEATURE_COUNT];
    for (k, &j) in active.iter().enumerate() {
        weights[j] = solution[k];
    }
    Ok(LinearModel {
        weights,
        bias: y_mean,
        scaler,
        ridge_fallback,
    })
}
