//! Attack configuration and its JSON schema.

use std::path::Path;

use serde::{Deserialize, Serialize};

use plr_data::FEATURE_COUNT;

use crate::error::AttackError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackMethod {
    Fgsm,
    Distance,
    Lowprofool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsilonScaling {
    /// The same epsilon for every standardized feature.
    Absolute,
    /// Epsilon times the standardized training range of each feature.
    FeatureScaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FgsmVariant {
    /// sign(residual) * sign(w): the error keeps its per-record direction.
    Fluctuation,
    /// sign(w): every perturbed prediction increases.
    Maximize,
    /// sign of the loss gradient; zero-residual records stay untouched.
    Plain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LowProFoolParams {
    pub steps: usize,
    pub step_size: f64,
    /// Penalty trade-off lambda; 0 disables the weighted-norm penalty.
    pub trade_off: f64,
    /// Per-feature conspicuousness weights; empty means all ones.
    pub feature_weights: Vec<f64>,
}

impl Default for LowProFoolParams {
    fn default() -> Self {
        Self {
            steps: 10,
            step_size: 0.1,
            trade_off: 0.1,
            feature_weights: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DistanceParams {
    /// Minimum pathloss gap, in dB, a donor must have from the victim.
    pub delta: f64,
}

impl Default for DistanceParams {
    fn default() -> Self {
        Self { delta: 10.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AttackConfig {
    pub method: AttackMethod,
    /// Perturbation budget in standardized feature units.
    pub epsilon: f64,
    /// Fraction of records to poison.
    pub fraction: f64,
    pub scaling: EpsilonScaling,
    pub fgsm_variant: FgsmVariant,
    /// Replace form of the sign rule: x' = eps * sign(grad) with no
    /// additive x term. Off by default.
    pub replace: bool,
    pub lowprofool: LowProFoolParams,
    pub distance: DistanceParams,
    pub seed: u64,
}

impl Default for AttackConfig {
    fn default() -> Self {
        Self {
            method: AttackMethod::Fgsm,
            epsilon: 0.1,
            fraction: 0.6,
            scaling: EpsilonScaling::FeatureScaled,
            fgsm_variant: FgsmVariant::Maximize,
            replace: false,
            lowprofool: LowProFoolParams::default(),
            distance: DistanceParams::default(),
            seed: 42,
        }
    }
}

impl AttackConfig {
    pub fn validate(&self) -> Result<(), AttackError> {
        let bad = |m: String| Err(AttackError::InvalidConfig(m));
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return bad(format!("epsilon must be > 0, got {}", self.epsilon));
        }
        if !(0.0..=1.0).contains(&self.fraction) {
            return bad(format!("fraction must be in [0,1], got {}", self.fraction));
        }
        if self.lowprofool.trade_off < 0.0 {
            return bad("lowprofool.trade_off must be >= 0".into());
        }
        if self.lowprofool.step_size < 0.0 {
            return bad("lowprofool.step_size must be >= 0".into());
        }
        let weights = &self.lowprofool.feature_weights;
        if !weights.is_empty() && weights.len() != FEATURE_COUNT {
            return bad(format!(
                "lowprofool.feature_weights must have {FEATURE_COUNT} entries or be empty"
            ));
        }
        if weights.iter().any(|w| *w < 0.0) {
            return bad("lowprofool.feature_weights must be >= 0".into());
        }
        Ok(())
    }

    pub fn from_json_file(path: &Path) -> Result<Self, AttackError> {
        let text = std::fs::read_to_string(path).map_err(|e| AttackError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let config: AttackConfig =
            serde_json::from_str(&text).map_err(|e| AttackError::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        AttackConfig::default().validate().unwrap();
    }

    #[test]
    fn bad_fraction_rejected() {
        let c = AttackConfig {
            fraction: 1.5,
            ..AttackConfig::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = AttackConfig::default();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"fgsm\""), "snake_case method tag: {text}");
        let back: AttackConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(c, back);
    }
}
