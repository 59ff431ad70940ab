//! Donor-based attack: replace a victim's features with those of the
//! nearest pool record whose pathloss differs by at least `delta` dB.

use plr_data::{Record, RecordSet, FEATURE_COUNT, TARGET_COLUMN};

use crate::error::AttackError;

/// Per-feature std from a pool's column statistics, reordered to the
/// 11-feature layout. Constant features get std 1. Means cancel out of
/// the standardized distance, so only the scale matters.
fn pool_feature_std(pool: &RecordSet) -> [f64; FEATURE_COUNT] {
    let mut std = [1.0; FEATURE_COUNT];
    let mut k = 0;
    for (col, stat) in pool.stats().iter().enumerate() {
        if col == TARGET_COLUMN {
            continue;
        }
        std[k] = if stat.std > 0.0 { stat.std } else { 1.0 };
        k += 1;
    }
    std
}

pub fn distance_based_attack(
    record: &Record,
    pool: &RecordSet,
    delta: f64,
) -> Result<Record, AttackError> {
    let std = pool_feature_std(pool);
    let victim = record.features();
    let mut best: Option<(f64, &Record)> = None;
    for donor in pool.records() {
        if (donor.pathloss - record.pathloss).abs() < delta {
            continue;
        }
        let feats = donor.features();
        let mut dist2 = 0.0;
        for j in 0..FEATURE_COUNT {
            let d = (feats[j] - victim[j]) / std[j];
            dist2 += d * d;
        }
        // strict < keeps the first of equally distant donors
        if best.is_none_or(|(b, _)| dist2 < b) {
            best = Some((dist2, donor));
        }
    }
    let (_, donor) = best.ok_or(AttackError::NoCandidate { delta })?;
    let mut out = *record;
    out.apply_features(&donor.features());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use plr_data::Provenance;

    fn record(tag: f64, pathloss: f64) -> Record {
        Record {
            x_coord: tag,
            y_coord: tag * 2.0,
            distance: 1.0 + tag.abs(),
            pathloss,
            doa_phi: 0.0,
            doa_theta: 90.0,
            dod_phi: 0.0,
            dod_theta: 90.0,
            phase: 0.0,
            power: 1e-9,
            time_of_arrival: 1e-8,
            los: 1,
        }
    }

    #[test]
    fn gap_constraint_selects_the_far_donor() {
        let a = record(1.0, 10.0);
        let b = record(50.0, 50.0);
        let pool = RecordSet::new(vec![a, b], Provenance::Ingested).unwrap();
        let victim = record(1.1, 12.0); // near A, but A misses the 20 dB gap
        let out = distance_based_attack(&victim, &pool, 20.0).unwrap();
        assert_eq!(out.x_coord, 50.0, "only B clears the gap");
        assert_eq!(out.pathloss, 12.0, "victim keeps its own target");
    }

    #[test]
    fn zero_delta_means_nearest_overall() {
        let a = record(1.0, 10.0);
        let b = record(50.0, 50.0);
        let pool = RecordSet::new(vec![a, b], Provenance::Ingested).unwrap();
        let victim = record(1.1, 12.0);
        let out = distance_based_attack(&victim, &pool, 0.0).unwrap();
        assert_eq!(out.x_coord, 1.0, "constraint vacuous, nearest wins");
    }

    #[test]
    fn singleton_identical_pool_has_no_candidate() {
        let a = record(3.0, 70.0);
        let pool = RecordSet::new(vec![a], Provenance::Ingested).unwrap();
        let err = distance_based_attack(&a, &pool, 5.0).unwrap_err();
        assert!(matches!(err, AttackError::NoCandidate { .. }));
    }
}
