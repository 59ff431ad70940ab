//! Stratified k-fold cross-validation and grid search over boosting
//! hyperparameters.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boost::train_gbdt;
use crate::error::DetectError;
use crate::metrics::classification_metrics;
use crate::params::GbdtParams;

/// Seeded stratified fold assignment; fold of each row, 0..k. Every class
/// needs at least `k` members.
pub fn stratified_folds(labels: &[u8], k: usize, seed: u64) -> Result<Vec<usize>, DetectError> {
    if k < 2 {
        return Err(DetectError::InvalidParams("k_folds must be >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; labels.len()];
    for class in [0u8, 1u8] {
        let mut members: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == class)
            .map(|(i, _)| i)
            .collect();
        if members.len() < k {
            return Err(DetectError::InfeasibleStratification {
                class,
                count: members.len(),
                k,
            });
        }
        members.shuffle(&mut rng);
        for (pos, idx) in members.into_iter().enumerate() {
            assignment[idx] = pos % k;
        }
    }
    Ok(assignment)
}

/// Per-candidate mean F1 over the folds, paired with the winning params.
#[derive(Debug, Clone)]
pub struct GridSearchResult {
    pub best: GbdtParams,
    pub mean_f1: Vec<f64>,
}

/// Exhaustive search over the grid with stratified k-fold CV, scored by
/// mean F1 on the held-out folds. Ties go to fewer trees, then shallower
/// depth, then grid order. Folds (and fold seeds) are shared across
/// candidates.
pub fn grid_search(
    rows: &[Vec<f64>],
    labels: &[u8],
    grid: &[GbdtParams],
    k_folds: usize,
    seed: u64,
) -> Result<GridSearchResult, DetectError> {
    if grid.is_empty() {
        return Err(DetectError::EmptyGrid);
    }
    let folds = stratified_folds(labels, k_folds, seed)?;

    let mut mean_f1 = Vec::with_capacity(grid.len());
    for candidate in grid {
        candidate.validate()?;
        let mut total = 0.0;
        for fold in 0..k_folds {
            let mut train_rows = Vec::new();
            let mut train_labels = Vec::new();
            let mut val_rows = Vec::new();
            let mut val_labels = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                if folds[i] == fold {
                    val_rows.push(row.clone());
                    val_labels.push(labels[i]);
                } else {
                    train_rows.push(row.clone());
                    train_labels.push(labels[i]);
                }
            }
            let model = train_gbdt(&train_rows, &train_labels, candidate)?;
            let predicted: Vec<u8> = val_rows
                .iter()
                .map(|r| model.predict_label(r, 0.5))
                .collect::<Result<_, _>>()?;
            let metrics = classification_metrics(&predicted, &val_labels)?;
            total += metrics.f1.unwrap_or(0.0);
        }
        mean_f1.push(total / k_folds as f64);
    }

    let mut best_idx = 0;
    for i in 1..grid.len() {
        let better = mean_f1[i] > mean_f1[best_idx]
            || (mean_f1[i] == mean_f1[best_idx]
                && (grid[i].n_estimators < grid[best_idx].n_estimators
                    || (grid[i].n_estimators == grid[best_idx].n_estimators
                        && grid[i].max_depth < grid[best_idx].max_depth)));
        if better {
            best_idx = i;
        }
    }
    Ok(GridSearchResult {
        best: grid[best_idx],
        mean_f1,
    })
}

/// Grid file schema: a JSON array of GbdtParams objects.
pub fn grid_from_json_file(path: &Path) -> Result<Vec<GbdtParams>, DetectError> {
    let text = std::fs::read_to_string(path).map_err(|e| DetectError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let grid: Vec<GbdtParams> = serde_json::from_str(&text)?;
    for params in &grid {
        params.validate()?;
    }
    Ok(grid)
}
