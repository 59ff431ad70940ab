//! Equal-frequency split-candidate thresholds.

/// Per-feature sorted candidate thresholds. When a feature has no more
/// distinct values than bins, thresholds are the midpoints between every
/// pair of adjacent distinct values, so no split candidate is lost.
#[derive(Debug, Clone)]
pub struct FeatureBins {
    pub thresholds: Vec<Vec<f64>>,
}

impl FeatureBins {
    pub fn build(rows: &[Vec<f64>], n_features: usize, n_bins: usize) -> Self {
        let n = rows.len();
        let mut thresholds = Vec::with_capacity(n_features);
        for j in 0..n_features {
            let mut values: Vec<f64> = rows.iter().map(|r| r[j]).collect();
            values.sort_by(|a, b| a.partial_cmp(b).expect("finite features"));
            let mut distinct = values.clone();
            distinct.dedup();

            let mut ts: Vec<f64> = if distinct.len() <= n_bins {
                distinct.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect()
            } else {
                let mut ts = Vec::with_capacity(n_bins - 1);
                for b in 1..n_bins {
                    let idx = b * n / n_bins;
                    let lo = values[idx - 1];
                    let hi = values[idx];
                    if hi > lo {
                        ts.push((lo + hi) / 2.0);
                    }
                }
                ts
            };
            ts.dedup();
            thresholds.push(ts);
        }
        Self { thresholds }
    }

    /// Bin of `x` for feature `j`: the number of thresholds strictly below
    /// x, so the split "x <= thresholds[j][t]" keeps bins 0..=t left.
    pub fn bin(&self, j: usize, x: f64) -> u16 {
        self.thresholds[j].partition_point(|t| *t < x) as u16
    }

    /// Column-major binned copy of the data.
    pub fn bin_columns(&self, rows: &[Vec<f64>], n_features: usize) -> Vec<Vec<u16>> {
        (0..n_features)
            .map(|j| rows.iter().map(|r| self.bin(j, r[j])).collect())
            .collect()
    }

    pub fn n_bins_of(&self, j: usize) -> usize {
        self.thresholds[j].len() + 1
    }
}
