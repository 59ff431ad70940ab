//! Boosting hyperparameters.

use serde::{Deserialize, Serialize};

use crate::error::DetectError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GbdtParams {
    pub n_estimators: usize,
    pub learning_rate: f64,
    /// Maximum tree depth in edges; a stump has depth 1.
    pub max_depth: usize,
    pub num_leaves: usize,
    /// Row fraction drawn (without replacement) per boosting round.
    pub subsample: f64,
    /// Minimum rows per leaf.
    pub min_leaf: usize,
    /// Split-candidate bins per feature (equal-frequency).
    pub n_bins: usize,
    /// L2 regularization on leaf values.
    pub l2_leaf: f64,
    pub seed: u64,
}

impl Default for GbdtParams {
    fn default() -> Self {
        Self {
            n_estimators: 100,
            learning_rate: 0.1,
            max_depth: 6,
            num_leaves: 20,
            subsample: 1.0,
            min_leaf: 20,
            n_bins: 64,
            l2_leaf: 1.0,
            seed: 42,
        }
    }
}

impl GbdtParams {
    pub fn validate(&self) -> Result<(), DetectError> {
        let bad = |m: String| Err(DetectError::InvalidParams(m));
        if self.n_estimators == 0 {
            return bad("n_estimators must be >= 1".into());
        }
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return bad(format!("learning_rate must be > 0, got {}", self.learning_rate));
        }
        if self.max_depth == 0 {
            return bad("max_depth must be >= 1".into());
        }
        if self.num_leaves < 2 {
            return bad("num_leaves must be >= 2".into());
        }
        // 2^max_depth caps the leaf count of a depth-limited binary tree
        if self.max_depth < 64 && self.num_leaves > (1usize << self.max_depth) {
            return bad(format!(
                "num_leaves {} exceeds 2^max_depth = {}",
                self.num_leaves,
                1usize << self.max_depth
            ));
        }
        if !self.subsample.is_finite() || self.subsample <= 0.0 || self.subsample > 1.0 {
            return bad(format!("subsample must be in (0,1], got {}", self.subsample));
        }
        if self.min_leaf == 0 {
            return bad("min_leaf must be >= 1".into());
        }
        if self.n_bins < 2 {
            return bad("n_bins must be >= 2".into());
        }
        if self.l2_leaf < 0.0 {
            return bad("l2_leaf must be >= 0".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        GbdtParams::default().validate().unwrap();
    }

    #[test]
    fn leaf_cap_against_depth() {
        let p = GbdtParams {
            max_depth: 2,
            num_leaves: 5,
            ..GbdtParams::default()
        };
        assert!(p.validate().is_err());
        let p = GbdtParams {
            max_depth: 2,
            num_leaves: 4,
            min_leaf: 1,
            ..GbdtParams::default()
        };
        p.validate().unwrap();
    }
}
