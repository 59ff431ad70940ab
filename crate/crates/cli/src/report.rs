//! Experiment report: machine JSON plus an aligned-text rendering.

use std::path::Path;

use serde::{Deserialize, Serialize};

use plr_detect::{ClassificationMetrics, GbdtParams};
use plr_regress::RegressionMetrics;

use crate::config::Contamination;
use crate::error::PipelineError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub mse: f64,
    pub r2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FractionRow {
    pub fraction: f64,
    pub mse: f64,
    pub r2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub index: usize,
    pub actual: f64,
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSeries {
    pub variant: String,
    pub points: Vec<TracePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorReport {
    pub chosen_params: GbdtParams,
    /// Mean CV F1 per grid candidate, in grid order.
    pub grid_mean_f1: Vec<f64>,
    pub gbdt: ClassificationMetrics,
    pub logistic_baseline: ClassificationMetrics,
    /// Balanced training rows (benign + attacked copies) drawn from the
    /// poison pool.
    pub training_rows: usize,
    /// Pool records skipped because the attack had no candidate for them.
    pub skipped_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportProvenance {
    pub config_hash: String,
    pub seed: u64,
    pub data_source: String,
    pub record_count: usize,
    pub excluded_blocked: Option<usize>,
    pub excluded_inside: Option<usize>,
    pub split_sizes: (usize, usize, usize),
    pub contamination: Contamination,
    pub epsilon: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub provenance: ReportProvenance,
    pub undefended: RegressionMetrics,
    pub attacked: RegressionMetrics,
    pub secured: RegressionMetrics,
    pub removed_count: usize,
    pub detector: DetectorReport,
    pub epsilon_sweep: Vec<SweepRow>,
    pub fraction_sweep: Vec<FractionRow>,
    pub scenario_trace: Vec<TraceSeries>,
}

fn fmt_r2(r2: Option<f64>) -> String {
    match r2 {
        Some(v) => format!("{v:.4}"),
        None => "n/a".to_string(),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.4}"),
        None => "n/a".to_string(),
    }
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn write_json(&self, path: &Path) -> Result<(), PipelineError> {
        std::fs::write(path, self.to_json())
            .map_err(|e| PipelineError::Data(format!("{}: {e}", path.display())))
    }

    pub fn from_json_file(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::Data(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| PipelineError::Data(format!("{}: {e}", path.display())))
    }

    /// Human-oriented rendering: scenario dynamics and the detector
    /// comparison, aligned like the usual two summary tables.
    pub fn render_text(&self) -> String {
        let p = &self.provenance;
        let mut out = String::new();
        out.push_str(&format!(
            "Scenario dynamics (epsilon = {}, fraction = {}):\n",
            p.epsilon, p.fraction
        ));
        out.push_str("  Scenario               MSE       R^2\n");
        let row = |name: &str, m: &RegressionMetrics| {
            format!("  {:<20} {:>9.4} {:>9}\n", name, m.mse, fmt_r2(m.r2))
        };
        out.push_str(&row("Undefended Model", &self.undefended));
        out.push_str(&row("Attacked Model", &self.attacked));
        out.push_str(&row("Secured Model", &self.secured));
        out.push_str(&format!(
            "  removed {} of {} evaluation records\n",
            self.removed_count, self.split_sizes_test()
        ));
        out.push('\n');

        let c = &self.detector.chosen_params;
        out.push_str("Detector comparison (Precision | Recall | F1):\n");
        let d = &self.detector.gbdt;
        out.push_str(&format!(
            "  gbdt(n_estimators={}, max_depth={}, num_leaves={}, subsample={:.2})  {} | {} | {}\n",
            c.n_estimators,
            c.max_depth,
            c.num_leaves,
            c.subsample,
            fmt_opt(d.precision),
            fmt_opt(d.recall),
            fmt_opt(d.f1),
        ));
        let b = &self.detector.logistic_baseline;
        out.push_str(&format!(
            "  logistic-baseline  {} | {} | {}\n",
            fmt_opt(b.precision),
            fmt_opt(b.recall),
            fmt_opt(b.f1),
        ));
        out.push('\n');

        out.push_str("Epsilon sweep (attacked-scenario metrics):\n");
        out.push_str("  epsilon       MSE       R^2\n");
        for r in &self.epsilon_sweep {
            out.push_str(&format!(
                "  {:<10} {:>9.4} {:>9}\n",
                r.epsilon,
                r.mse,
                fmt_r2(r.r2)
            ));
        }
        out
    }

    fn split_sizes_test(&self) -> usize {
        self.provenance.split_sizes.2
    }
}
