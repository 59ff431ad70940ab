//! Logistic-regression baseline, trained by full-batch gradient descent
//! over standardized features. Comparison stand-in next to the boosted
//! trees in the detector report.

use serde::{Deserialize, Serialize};

use crate::error::DetectError;

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticBaseline {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl LogisticBaseline {
    pub fn predict_proba(&self, row: &[f64]) -> Result<f64, DetectError> {
        if row.len() != self.weights.len() {
            return Err(DetectError::FeatureCountMismatch {
                expected: self.weights.len(),
                got: row.len(),
            });
        }
        let mut z = self.bias;
        for (j, v) in row.iter().enumerate() {
            z += self.weights[j] * (v - self.mean[j]) / self.std[j];
        }
        Ok(sigmoid(z))
    }

    pub fn predict_label(&self, row: &[f64], threshold: f64) -> Result<u8, DetectError> {
        Ok(u8::from(self.predict_proba(row)? >= threshold))
    }
}

/// Deterministic batch gradient descent on the logistic loss. The bias
/// starts at the prior logit, so zero iterations predict the base rate
/// everywhere.
pub fn train_logistic_baseline(
    rows: &[Vec<f64>],
    labels: &[u8],
    iterations: usize,
    step: f64,
) -> Result<LogisticBaseline, DetectError> {
    if rows.is_empty() || rows.len() != labels.len() || rows[0].is_empty() {
        return Err(DetectError::BadTrainingData);
    }
    let n = rows.len();
    let f = rows[0].len();
    if rows.iter().any(|r| r.len() != f) {
        return Err(DetectError::BadTrainingData);
    }
    let mut counts = [0usize; 2];
    for l in labels {
        if *l > 1 {
            return Err(DetectError::BadLabel(*l));
        }
        counts[*l as usize] += 1;
    }
    if counts[0] == 0 || counts[1] == 0 {
        let class = u8::from(counts[1] == 0);
        return Err(DetectError::ClassTooSmall { class, count: 0 });
    }

    let mut mean = vec![0.0; f];
    for row in rows {
        for j in 0..f {
            mean[j] += row[j] / n as f64;
        }
    }
    let mut std = vec![0.0; f];
    for row in rows {
        for j in 0..f {
            std[j] += (row[j] - mean[j]).powi(2);
        }
    }
    for s in std.iter_mut() {
        *s = (*s / n as f64).sqrt();
        if *s == 0.0 {
            *s = 1.0;
        }
    }

    let scaled: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| (0..f).map(|j| (r[j] - mean[j]) / std[j]).collect())
        .collect();
    let p = counts[1] as f64 / n as f64;
    let mut bias = (p / (1.0 - p)).ln();
    let mut weights = vec![0.0; f];

    for _ in 0..iterations {
        let mut grad_w = vec![0.0; f];
        let mut grad_b = 0.0;
        for (row, label) in scaled.iter().zip(labels) {
            let mut z = bias;
            for j in 0..f {
                z += weights[j] * row[j];
            }
            let err = sigmoid(z) - f64::from(*label);
            for j in 0..f {
                grad_w[j] += err * row[j];
            }
            grad_b += err;
        }
        for j in 0..f {
            weights[j] -= step * grad_w[j] / n as f64;
        }
        bias -= step * grad_b / n as f64;
    }

    Ok(LogisticBaseline {
        weights,
        bias,
        mean,
        std,
    })
}

/// Mean logistic loss of the baseline on labeled rows.
pub fn baseline_loss(model: &LogisticBaseline, rows: &[Vec<f64>], labels: &[u8]) -> f64 {
    rows.iter()
        .zip(labels)
        .map(|(row, label)| {
            let p = model.predict_proba(row).expect("consistent width");
            let p = p.clamp(1e-12, 1.0 - 1e-12);
            -(f64::from(*label) * p.ln() + (1.0 - f64::from(*label)) * (1.0 - p).ln())
        })
        .sum::<f64>()
        / rows.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn separable_1d(n: usize) -> (Vec<Vec<f64>>, Vec<u8>) {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64]).collect();
        let labels: Vec<u8> = (0..n).map(|i| u8::from(i >= n / 2)).collect();
        (rows, labels)
    }

    #[test]
    fn separable_data_reaches_full_accuracy() {
        let (rows, labels) = separable_1d(30);
        let model = train_logistic_baseline(&rows, &labels, 5000, 1.0).unwrap();
        for (row, label) in rows.iter().zip(&labels) {
            assert_eq!(model.predict_label(row, 0.5).unwrap(), *label);
        }
    }

    #[test]
    fn zero_iterations_predict_the_base_rate() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, -(i as f64)]).collect();
        let labels = [1u8, 0, 0, 0, 0, 1, 0, 0, 0, 0]; // base rate 0.2
        let model = train_logistic_baseline(&rows, &labels, 0, 0.5).unwrap();
        for row in &rows {
            assert!((model.predict_proba(row).unwrap() - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn loss_is_non_increasing_for_a_small_step() {
        let (rows, labels) = separable_1d(40);
        let mut previous = f64::INFINITY;
        for iterations in [0, 1, 2, 5, 10, 50, 200] {
            let model = train_logistic_baseline(&rows, &labels, iterations, 0.05).unwrap();
            let loss = baseline_loss(&model, &rows, &labels);
            assert!(
                loss <= previous + 1e-12,
                "loss {loss} at {iterations} iterations exceeds {previous}"
            );
            previous = loss;
        }
    }
}
