//! Seeded train / poison-pool / test splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::DataError;
use crate::record::RecordSet;

/// Split ratios and shuffle seed. Sizes follow the cumulative-floor rule:
/// |train| = floor(r1*N), |pool| = floor((r1+r2)*N) - floor(r1*N), test
/// takes the remainder, so any N yields reproducible sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub ratios: (f64, f64, f64),
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            ratios: (0.4, 0.4, 0.2),
            seed: 42,
        }
    }
}

impl SplitSpec {
    pub fn validate(&self) -> Result<(), DataError> {
        let (a, b, c) = self.ratios;
        let sum = a + b + c;
        if a < 0.0 || b < 0.0 || c < 0.0 || (sum - 1.0).abs() > 1e-12 {
            return Err(DataError::InvalidRatios(self.ratios));
        }
        Ok(())
    }

    /// (train, pool, test) sizes for a set of `n` records.
    pub fn sizes(&self, n: usize) -> (usize, usize, usize) {
        let cut1 = (self.ratios.0 * n as f64).floor() as usize;
        let cut2 = ((self.ratios.0 + self.ratios.1) * n as f64).floor() as usize;
        (cut1, cut2 - cut1, n - cut2)
    }
}

/// Seeded uniform shuffle followed by the cumulative-floor cut. The three
/// parts are disjoint, exhaustive, and deterministic per seed.
pub fn split(
    set: &RecordSet,
    spec: &SplitSpec,
) -> Result<(RecordSet, RecordSet, RecordSet), DataError> {
    spec.validate()?;
    let n = set.len();
    let (n_train, n_pool, n_test) = spec.sizes(n);
    if n_train == 0 {
        return Err(DataError::EmptySplitPart("train"));
    }
    if n_pool == 0 {
        return Err(DataError::EmptySplitPart("poison_pool"));
    }
    if n_test == 0 {
        return Err(DataError::EmptySplitPart("test"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    order.shuffle(&mut rng);

    let pick = |idx: &[usize]| -> Result<RecordSet, DataError> {
        let records = idx.iter().map(|&i| set.records()[i]).collect();
        set.with_records(records)
    };
    let train = pick(&order[..n_train])?;
    let pool = pick(&order[n_train..n_train + n_pool])?;
    let test = pick(&order[n_train + n_pool..])?;
    Ok((train, pool, test))
}
