//! Dataset statistics: Pearson correlations and histograms.

use serde::Serialize;

use crate::error::DataError;
use crate::record::{RecordSet, COLUMNS};

/// 12x12 Pearson correlation matrix over the record columns.
///
/// Diagonal entries are 1 where the column has nonzero variance;
/// zero-variance columns contribute 0 everywhere by convention.
pub fn correlation_matrix(set: &RecordSet) -> Result<Vec<Vec<f64>>, DataError> {
    if set.len() < 2 {
        return Err(DataError::TooFewRecords);
    }
    let n = set.len() as f64;
    let cols: Vec<Vec<f64>> = (0..COLUMNS.len()).map(|i| set.column(i)).collect();
    let means: Vec<f64> = cols.iter().map(|c| c.iter().sum::<f64>() / n).collect();
    let vars: Vec<f64> = cols
        .iter()
        .zip(&means)
        .map(|(c, m)| c.iter().map(|v| (v - m) * (v - m)).sum::<f64>())
        .collect();
    if vars.iter().all(|v| *v == 0.0) {
        return Err(DataError::AllConstant);
    }

    let k = COLUMNS.len();
    let mut out = vec![vec![0.0; k]; k];
    for i in 0..k {
        if vars[i] > 0.0 {
            out[i][i] = 1.0;
        }
        for j in (i + 1)..k {
            if vars[i] == 0.0 || vars[j] == 0.0 {
                continue;
            }
            let mut cov = 0.0;
            for (a, b) in cols[i].iter().zip(&cols[j]) {
                cov += (a - means[i]) * (b - means[j]);
            }
            let r = (cov / (vars[i] * vars[j]).sqrt()).clamp(-1.0, 1.0);
            out[i][j] = r;
            out[j][i] = r;
        }
    }
    Ok(out)
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in x.iter().zip(y) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return 0.0;
    }
    (cov / (vx * vy).sqrt()).clamp(-1.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub column: String,
    pub bins: Vec<HistogramBin>,
    /// Set when a constant column forced the single-bin fallback.
    pub degenerate: bool,
}

/// Equal-width histogram over [min, max] of one column. The last bin is
/// right-closed so counts always sum to the record count.
pub fn histogram(set: &RecordSet, column: usize, bins: usize) -> Result<Histogram, DataError> {
    if bins == 0 {
        return Err(DataError::ZeroBins);
    }
    let name = COLUMNS[column].to_string();
    let values = set.column(column);
    let lo = set.stats()[column].min;
    let hi = set.stats()[column].max;

    if lo == hi {
        return Ok(Histogram {
            column: name,
            bins: vec![HistogramBin {
                lo,
                hi,
                count: values.len(),
            }],
            degenerate: bins > 1,
        });
    }

    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for v in &values {
        let mut idx = ((v - lo) / width).floor() as usize;
        if idx >= bins {
            idx = bins - 1; // v == max lands in the right-closed last bin
        }
        counts[idx] += 1;
    }
    let out = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            lo: lo + width * i as f64,
            hi: if i + 1 == bins { hi } else { lo + width * (i + 1) as f64 },
            count,
        })
        .collect();
    Ok(Histogram {
        column: name,
        bins: out,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::{Provenance, Record};

    fn set_with_columns(xs: &[f64], ys: &[f64]) -> RecordSet {
        let records: Vec<Record> = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| Record {
                x_coord: x,
                y_coord: y,
                distance: 1.0,
                pathloss: 60.0,
                doa_phi: 0.0,
                doa_theta: 90.0,
                dod_phi: 0.0,
                dod_theta: 90.0,
                phase: 0.0,
                power: 1e-9,
                time_of_arrival: 1e-8,
                los: 1,
            })
            .collect();
        RecordSet::new(records, Provenance::Generated).unwrap()
    }

    #[test]
    fn perfect_linear_pairs() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]) - 1.0).abs() < 1e-15);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn hand_computed_pearson_values() {
        // (1,2,3) vs (1,3,3): cov-sum 2, var-sums 2 and 8/3 -> 0.8660
        let r = pearson(&[1.0, 2.0, 3.0], &[1.0, 3.0, 3.0]);
        assert!((r - 0.866_025_403_784_438_6).abs() < 1e-12, "got {r}");
        // (1,2,4) vs (1,3,3): cov-sum 8/3, var-sums 14/3 and 8/3 -> 0.7559
        let r = pearson(&[1.0, 2.0, 4.0], &[1.0, 3.0, 3.0]);
        assert!((r - 0.755_928_946_018_454_5).abs() < 1e-12, "got {r}");
    }

    #[test]
    fn matrix_is_symmetric_with_unit_diagonal() {
        let set = set_with_columns(&[1.0, 2.0, 3.0, 5.0], &[2.0, 1.0, 4.0, 4.5]);
        let m = correlation_matrix(&set).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, m[j][i]);
                assert!(v.abs() <= 1.0);
            }
        }
        assert_eq!(m[0][0], 1.0);
        // constant columns (e.g. distance) zero out, including the diagonal
        assert_eq!(m[2][2], 0.0);
        assert_eq!(m[2][0], 0.0);
    }

    #[test]
    fn too_few_records_is_an_error() {
        let set = set_with_columns(&[1.0], &[2.0]);
        assert!(matches!(
            correlation_matrix(&set),
            Err(DataError::TooFewRecords)
        ));
    }

    #[test]
    fn histogram_splits_evenly_and_conserves_counts() {
        let set = set_with_columns(&[0.0, 1.0, 2.0, 3.0], &[0.0; 4]);
        let h = histogram(&set, 0, 2).unwrap();
        assert!(!h.degenerate);
        assert_eq!(h.bins.len(), 2);
        assert_eq!((h.bins[0].lo, h.bins[0].hi, h.bins[0].count), (0.0, 1.5, 2));
        assert_eq!((h.bins[1].lo, h.bins[1].hi, h.bins[1].count), (1.5, 3.0, 2));
    }

    #[test]
    fn constant_column_falls_back_to_single_flagged_bin() {
        let set = set_with_columns(&[1.0, 1.0, 1.0], &[0.0; 3]);
        let h = histogram(&set, 0, 4).unwrap();
        assert!(h.degenerate);
        assert_eq!(h.bins.len(), 1);
        assert_eq!((h.bins[0].lo, h.bins[0].hi, h.bins[0].count), (1.0, 1.0, 3));
    }

    #[test]
    fn zero_bins_rejected() {
        let set = set_with_columns(&[1.0, 2.0], &[0.0; 2]);
        assert!(matches!(histogram(&set, 0, 0), Err(DataError::ZeroBins)));
    }
}
