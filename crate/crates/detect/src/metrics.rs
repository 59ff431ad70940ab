//! Binary classification metrics.

use serde::{Deserialize, Serialize};

use crate::error::DetectError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

/// Precision/recall/F1 with the positive class = 1. Undefined ratios
/// (zero denominators) surface as `None`; the confusion counts are always
/// present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationMetrics {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
    pub confusion: Confusion,
}

pub fn classification_metrics(
    predicted: &[u8],
    truth: &[u8],
) -> Result<ClassificationMetrics, DetectError> {
    if predicted.is_empty() || predicted.len() != truth.len() {
        return Err(DetectError::LengthMismatch {
            predicted: predicted.len(),
            truth: truth.len(),
        });
    }
    let mut c = Confusion {
        tp: 0,
        fp: 0,
        fn_: 0,
        tn: 0,
    };
    for (p, t) in predicted.iter().zip(truth) {
        if *p > 1 {
            return Err(DetectError::BadLabel(*p));
        }
        if *t > 1 {
            return Err(DetectError::BadLabel(*t));
        }
        match (p, t) {
            (1, 1) => c.tp += 1,
            (1, 0) => c.fp += 1,
            (0, 1) => c.fn_ += 1,
            _ => c.tn += 1,
        }
    }
    let ratio = |num: usize, den: usize| -> Option<f64> {
        if den > 0 {
            Some(num as f64 / den as f64)
        } else {
            None
        }
    };
    let precision = ratio(c.tp, c.tp + c.fp);
    let recall = ratio(c.tp, c.tp + c.fn_);
    let f1 = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        (Some(_), Some(_)) => Some(0.0),
        _ => None,
    };
    Ok(ClassificationMetrics {
        precision,
        recall,
        f1,
        confusion: c,
    })
}
