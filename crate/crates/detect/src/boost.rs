//! Gradient boosting on the logistic loss.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binning::FeatureBins;
use crate::error::DetectError;
use crate::params::GbdtParams;
use crate::tree::{grow_tree, GrowContext, Tree};

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Boosted-tree binary classifier. Trees store raw leaf values; the
/// learning rate is applied at prediction time, matching how the logits
/// were accumulated during training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbdtModel {
    pub prior_logit: f64,
    pub learning_rate: f64,
    pub n_features: usize,
    pub trees: Vec<Tree>,
    pub params: GbdtParams,
}

impl GbdtModel {
    pub fn logit(&self, row: &[f64]) -> Result<f64, DetectError> {
        if row.len() != self.n_features {
            return Err(DetectError::FeatureCountMismatch {
                expected: self.n_features,
                got: row.len(),
            });
        }
        let mut acc = self.prior_logit;
        for tree in &self.trees {
            acc += self.learning_rate * tree.value(row);
        }
        Ok(acc)
    }

    /// Probability of the poisoned class.
    pub fn predict_proba(&self, row: &[f64]) -> Result<f64, DetectError> {
        Ok(sigmoid(self.logit(row)?))
    }

    /// Class decision at the given probability threshold (0.5 by default
    /// throughout the pipeline).
    pub fn predict_label(&self, row: &[f64], threshold: f64) -> Result<u8, DetectError> {
        Ok(u8::from(self.predict_proba(row)? >= threshold))
    }

    pub fn to_json_file(&self, path: &Path) -> Result<(), DetectError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).map_err(|e| DetectError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }

    pub fn from_json_file(path: &Path) -> Result<Self, DetectError> {
        let text = std::fs::read_to_string(path).map_err(|e| DetectError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn check_training_data(rows: &[Vec<f64>], labels: &[u8]) -> Result<usize, DetectError> {
    if rows.is_empty() || rows.len() != labels.len() {
        return Err(DetectError::BadTrainingData);
    }
    let n_features = rows[0].len();
    if n_features == 0 || rows.iter().any(|r| r.len() != n_features) {
        return Err(DetectError::BadTrainingData);
    }
    let mut counts = [0usize; 2];
    for l in labels {
        if *l > 1 {
            return Err(DetectError::BadLabel(*l));
        }
        counts[*l as usize] += 1;
    }
    for (class, count) in counts.iter().enumerate() {
        if *count < 2 {
            return Err(DetectError::ClassTooSmall {
                class: class as u8,
                count: *count,
            });
        }
    }
    Ok(n_features)
}

/// Trains the boosted ensemble: per round, a seeded row subsample, logistic
/// gradients/hessians at the current logits, one leaf-wise tree, and a
/// learning-rate-scaled logit update for every row.
pub fn train_gbdt(
    rows: &[Vec<f64>],
    labels: &[u8],
    params: &GbdtParams,
) -> Result<GbdtModel, DetectError> {
    params.validate()?;
    let n_features = check_training_data(rows, labels)?;
    let n = rows.len();

    let positives = labels.iter().filter(|l| **l == 1).count() as f64;
    let p = positives / n as f64;
    let prior_logit = (p / (1.0 - p)).ln();

    let bins = FeatureBins::build(rows, n_features, params.n_bins);
    let binned = bins.bin_columns(rows, n_features);

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut logits = vec![prior_logit; n];
    let mut grad = vec![0.0; n];
    let mut hess = vec![0.0; n];
    let mut trees = Vec::with_capacity(params.n_estimators);

    for _ in 0..params.n_estimators {
        let sampled: Vec<u32> = if params.subsample < 1.0 {
            let k = ((params.subsample * n as f64).round() as usize).clamp(1, n);
            let mut idx = rand::seq::index::sample(&mut rng, n, k).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| i as u32).collect()
        } else {
            (0..n as u32).collect()
        };
        for i in 0..n {
            let prob = sigmoid(logits[i]);
            grad[i] = prob - f64::from(labels[i]);
            hess[i] = prob * (1.0 - prob);
        }
        let ctx = GrowContext {
            binned: &binned,
            bins: &bins,
            grad: &grad,
            hess: &hess,
            min_leaf: params.min_leaf,
            l2: params.l2_leaf,
            max_depth: params.max_depth,
            num_leaves: params.num_leaves,
        };
        let tree = grow_tree(&ctx, sampled);
        for (i, row) in rows.iter().enumerate() {
            logits[i] += params.learning_rate * tree.value(row);
        }
        trees.push(tree);
    }

    Ok(GbdtModel {
        prior_logit,
        learning_rate: params.learning_rate,
        n_features,
        trees,
        params: *params,
    })
}

/// Mean logistic loss of a model over labeled rows.
pub fn logistic_loss(model: &GbdtModel, rows: &[Vec<f64>], labels: &[u8]) -> f64 {
    let mut acc = 0.0;
    for (row, label) in rows.iter().zip(labels) {
        let z = model.logit(row).expect("consistent width");
        // ln(1 + e^z) - y*z, stabilized for large |z|
        let softplus = if z > 30.0 { z } else { (1.0 + z.exp()).ln() };
        acc += softplus - f64::from(*label) * z;
    }
    acc / rows.len() as f64
}
