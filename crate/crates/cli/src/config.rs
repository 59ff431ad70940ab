//! Experiment configuration: data source, split, attack, detector grid,
//! contamination mode and sweep grids, with one master seed deriving every
//! component seed.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use plr_attack::AttackConfig;
use plr_data::SplitSpec;
use plr_detect::GbdtParams;

use crate::error::PipelineError;

/// Default epsilon sweep (feature-scaled units). The mid-sweep value used
/// by detector benchmarks is the middle entry, 0.1.
pub const DEFAULT_EPSILON_SWEEP: [f64; 5] = [0.01, 0.03, 0.1, 0.3, 1.0];

/// Default fraction sweep grid.
pub const DEFAULT_FRACTION_SWEEP: [f64; 6] = [0.2, 0.4, 0.6, 0.8, 0.95, 0.99999];

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataSource {
    /// Scene JSON path: the dataset is generated.
    Scene(PathBuf),
    /// Existing dataset CSV path.
    Csv(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contamination {
    /// Perturb the held-out evaluation set against a frozen model.
    EvaluationSet,
    /// Perturb the training set and refit (poisoning in the strict sense).
    TrainingSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub data: DataSource,
    #[serde(default)]
    pub split: SplitSpec,
    #[serde(default)]
    pub attack: AttackConfig,
    #[serde(default = "default_grid")]
    pub detector_grid: Vec<GbdtParams>,
    #[serde(default = "default_k_folds")]
    pub k_folds: usize,
    #[serde(default = "default_contamination")]
    pub contamination: Contamination,
    #[serde(default = "default_epsilon_sweep")]
    pub epsilon_sweep: Vec<f64>,
    #[serde(default = "default_fraction_sweep")]
    pub fraction_sweep: Vec<f64>,
    /// Test-set prefix length exported as the per-record scenario trace.
    #[serde(default = "default_trace_len")]
    pub trace_len: usize,
    /// Master seed; component seeds (split, attack, folds, boosting) are
    /// derived from it so one knob controls the whole run.
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_k_folds() -> usize {
    3
}

fn default_contamination() -> Contamination {
    Contamination::EvaluationSet
}

fn default_epsilon_sweep() -> Vec<f64> {
    DEFAULT_EPSILON_SWEEP.to_vec()
}

fn default_fraction_sweep() -> Vec<f64> {
    DEFAULT_FRACTION_SWEEP.to_vec()
}

fn default_trace_len() -> usize {
    50
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// Default detector grid: a deep narrow candidate, a shallow wide one and
/// a mid-size one, all modest enough for desk-scale runs.
pub fn default_grid() -> Vec<GbdtParams> {
    vec![
        GbdtParams {
            n_estimators: 120,
            max_depth: 8,
            num_leaves: 31,
            subsample: 0.7,
            min_leaf: 20,
            ..GbdtParams::default()
        },
        GbdtParams {
            n_estimators: 80,
            max_depth: 6,
            num_leaves: 20,
            subsample: 0.7,
            min_leaf: 20,
            ..GbdtParams::default()
        },
        GbdtParams {
            n_estimators: 80,
            max_depth: 3,
            num_leaves: 8,
            subsample: 1.0,
            min_leaf: 20,
            ..GbdtParams::default()
        },
    ]
}

impl ExperimentConfig {
    pub fn for_csv(path: impl Into<PathBuf>) -> Self {
        Self {
            data: DataSource::Csv(path.into()),
            split: SplitSpec::default(),
            attack: AttackConfig::default(),
            detector_grid: default_grid(),
            k_folds: default_k_folds(),
            contamination: default_contamination(),
            epsilon_sweep: default_epsilon_sweep(),
            fraction_sweep: default_fraction_sweep(),
            trace_len: default_trace_len(),
            seed: DEFAULT_SEED,
        }
    }

    pub fn for_scene(path: impl Into<PathBuf>) -> Self {
        Self {
            data: DataSource::Scene(path.into()),
            ..Self::for_csv("")
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let path = match &self.data {
            DataSource::Scene(p) | DataSource::Csv(p) => p,
        };
        if !path.exists() {
            return Err(PipelineError::Config(format!(
                "data source does not exist: {}",
                path.display()
            )));
        }
        self.split.validate().map_err(PipelineError::config)?;
        self.attack.validate().map_err(PipelineError::config)?;
        if self.detector_grid.is_empty() {
            return Err(PipelineError::Config("detector_grid is empty".into()));
        }
        for params in &self.detector_grid {
            params.validate().map_err(PipelineError::config)?;
        }
        if self.k_folds < 2 {
            return Err(PipelineError::Config("k_folds must be >= 2".into()));
        }
        if self.epsilon_sweep.is_empty() || self.fraction_sweep.is_empty() {
            return Err(PipelineError::Config("sweep grids must be non-empty".into()));
        }
        Ok(())
    }

    pub fn from_json_file(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::Config(format!("{}: {e}", path.display())))?;
        let config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| PipelineError::Config(format!("{}: {e}", path.display())))?;
        Ok(config)
    }

    /// Component seeds derived from the master seed.
    pub fn split_seed(&self) -> u64 {
        self.seed
    }

    pub fn attack_seed(&self) -> u64 {
        self.seed.wrapping_add(1)
    }

    pub fn fold_seed(&self) -> u64 {
        self.seed.wrapping_add(2)
    }

    pub fn boost_seed(&self) -> u64 {
        self.seed.wrapping_add(3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_defaults() {
        let text = r#"{"data": {"csv": "/tmp/x.csv"}}"#;
        let config: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert_eq!(config.seed, DEFAULT_SEED);
        assert_eq!(config.k_folds, 3);
        assert_eq!(config.contamination, Contamination::EvaluationSet);
        assert_eq!(config.epsilon_sweep, DEFAULT_EPSILON_SWEEP.to_vec());
        let back: ExperimentConfig =
            serde_json::from_str(&serde_json::to_string(&config).unwrap()).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"data": {"csv": "/tmp/x.csv"}, "epsilon": 2.0}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(text).is_err());
    }
}
