//! Weighted-norm-penalized iterative perturbation: pushes the prediction
//! up while discouraging movement along conspicuous (high-weight) features.

use plr_data::{Record, FEATURE_COUNT};
use plr_regress::LinearModel;

use crate::config::LowProFoolParams;

/// Gradient of ||v ⊙ r||_2 with respect to r; defined as 0 at r = 0.
fn penalty_gradient(v: &[f64; FEATURE_COUNT], r: &[f64; FEATURE_COUNT]) -> [f64; FEATURE_COUNT] {
    let norm: f64 = v
        .iter()
        .zip(r.iter())
        .map(|(a, b)| (a * b) * (a * b))
        .sum::<f64>()
        .sqrt();
    let mut g = [0.0; FEATURE_COUNT];
    if norm == 0.0 {
        return g;
    }
    for j in 0..FEATURE_COUNT {
        g[j] = v[j] * v[j] * r[j] / norm;
    }
    g
}

/// Iterative ascent on the perturbation r in standardized space:
/// r += step * (w - lambda * d||v ⊙ r||/dr), for the configured number of
/// steps. Zero steps return the record unchanged.
pub fn lowprofool_perturb(
    model: &LinearModel,
    record: &Record,
    params: &LowProFoolParams,
) -> Record {
    if params.steps == 0 {
        return *record;
    }
    let mut v = [1.0; FEATURE_COUNT];
    if !params.feature_weights.is_empty() {
        v.copy_from_slice(&params.feature_weights);
    }
    let mut r = [0.0; FEATURE_COUNT];
    for _ in 0..params.steps {
        let pg = penalty_gradient(&v, &r);
        for j in 0..FEATURE_COUNT {
            r[j] += params.step_size * (model.weights[j] - params.trade_off * pg[j]);
        }
    }
    let scaled = model.scaler.standardize(&record.features());
    let mut crafted = scaled;
    for j in 0..FEATURE_COUNT {
        crafted[j] += r[j];
    }
    let feats = model.scaler.destandardize(&crafted);
    let mut out = *record;
    out.apply_features(&feats);
    out
}
