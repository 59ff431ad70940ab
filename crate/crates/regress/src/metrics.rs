//! MSE and R-squared.

use serde::{Deserialize, Serialize};

use crate::error::RegressError;

/// Regression quality of one prediction set. `r2` is `None` when the
/// targets are constant and the score is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionMetrics {
    pub mse: f64,
    pub r2: Option<f64>,
}

pub fn regression_metrics(
    predictions: &[f64],
    targets: &[f64],
) -> Result<RegressionMetrics, RegressError> {
    if predictions.is_empty() || predictions.len() != targets.len() {
        return Err(RegressError::LengthMismatch {
            predictions: predictions.len(),
            targets: targets.len(),
        });
    }
    let n = targets.len() as f64;
    let ss_res: f64 = predictions
        .iter()
        .zip(targets)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    let mean = targets.iter().sum::<f64>() / n;
    let ss_tot: f64 = targets.iter().map(|t| (t - mean) * (t - mean)).sum();
    let r2 = if ss_tot > 0.0 {
        Some(1.0 - ss_res / ss_tot)
    } else {
        None
    };
    Ok(RegressionMetrics { mse: ss_res / n, r2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_predictions() {
        let m = regression_metrics(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(m.mse, 0.0);
        assert_eq!(m.r2, Some(1.0));
    }

    #[test]
    fn predicting_the_mean_scores_zero_r2() {
        let targets = [1.0, 2.0, 3.0, 6.0];
        let mean = 3.0;
        let m = regression_metrics(&[mean; 4], &targets).unwrap();
        assert!((m.r2.unwrap()).abs() < 1e-15);
    }

    #[test]
    fn hand_computed_example() {
        // SS_res = 4, SS_tot = 4.5 -> mse 2.0, r2 = 1 - 8/9
        let m = regression_metrics(&[1.0, 2.0], &[1.0, 4.0]).unwrap();
        assert_eq!(m.mse, 2.0);
        assert!((m.r2.unwrap() - (1.0 - 4.0 / 4.5)).abs() < 1e-15);
        assert!((m.r2.unwrap() - 0.1111).abs() < 1e-4);
    }

    #[test]
    fn constant_targets_yield_the_undefined_marker() {
        let m = regression_metrics(&[1.0, 2.0], &[5.0, 5.0]).unwrap();
        assert_eq!(m.r2, None);
        assert!(m.mse > 0.0);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(regression_metrics(&[1.0], &[1.0, 2.0]).is_err());
        assert!(regression_metrics(&[], &[]).is_err());
    }
}
