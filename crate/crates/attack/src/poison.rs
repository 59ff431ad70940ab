//! Seeded poisoning of a record set and sidecar-labeled CSV persistence.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use plr_data::{check_header, parse_row, write_records, Record, RecordSet};
use plr_regress::LinearModel;

use crate::config::{AttackConfig, AttackMethod};
use crate::distance::distance_based_attack;
use crate::error::AttackError;
use crate::fgsm::fgsm_perturb;
use crate::lowprofool::lowprofool_perturb;

pub const POISON_LABEL_COLUMN: &str = "is_poisoned";

/// Records with aligned poison labels. Perturbed records can leave the
/// physical manifold (that is the point), so this deliberately does not
/// re-validate through [`RecordSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct PoisonedSet {
    pub records: Vec<Record>,
    /// 1 = poisoned, aligned with `records`.
    pub labels: Vec<u8>,
    /// Victims left benign because the attack had no candidate.
    pub skipped: usize,
}

impl PoisonedSet {
    pub fn poisoned_count(&self) -> usize {
        self.labels.iter().filter(|l| **l == 1).count()
    }
}

/// Applies the configured method to one record. The donor pool is only
/// consulted by the distance method.
pub fn attack_record(
    model: &LinearModel,
    pool: &RecordSet,
    config: &AttackConfig,
    record: &Record,
) -> Result<Record, AttackError> {
    match config.method {
        AttackMethod::Fgsm => Ok(fgsm_perturb(
            model,
            record,
            config.epsilon,
            config.scaling,
            config.fgsm_variant,
            config.replace,
        )),
        AttackMethod::Distance => distance_based_attack(record, pool, config.distance.delta),
        AttackMethod::Lowprofool => Ok(lowprofool_perturb(model, record, &config.lowprofool)),
    }
}

/// Perturbs a seeded uniform choice of round(fraction * N) records in
/// place (order preserved). Distance-attack victims with no candidate stay
/// benign and are counted in `skipped`.
pub fn poison(
    set: &RecordSet,
    model: &LinearModel,
    config: &AttackConfig,
) -> Result<PoisonedSet, AttackError> {
    config.validate()?;
    let n = set.len();
    let k = (config.fraction * n as f64).round() as usize;
    let mut victim = vec![false; n];
    if k > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for idx in rand::seq::index::sample(&mut rng, n, k.min(n)) {
            victim[idx] = true;
        }
    }

    let mut records = Vec::with_capacity(n);
    let mut labels = vec![0u8; n];
    let mut skipped = 0;
    for (i, r) in set.records().iter().enumerate() {
        if !victim[i] {
            records.push(*r);
            continue;
        }
        match attack_record(model, set, config, r) {
            Ok(perturbed) => {
                records.push(perturbed);
                labels[i] = 1;
            }
            Err(AttackError::NoCandidate { .. }) => {
                records.push(*r);
                skipped += 1;
            }
            Err(other) => return Err(other),
        }
    }
    Ok(PoisonedSet {
        records,
        labels,
        skipped,
    })
}

/// Dataset CSV plus the sidecar `is_poisoned` column.
pub fn save_poisoned_csv(set: &PoisonedSet, path: &Path) -> Result<(), AttackError> {
    let file = File::create(path).map_err(|e| AttackError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut w = BufWriter::new(file);
    write_records(&mut w, &set.records, &[(POISON_LABEL_COLUMN, &set.labels)]).map_err(|e| {
        AttackError::Io {
            path: path.display().to_string(),
            source: e,
        }
    })
}

pub fn load_poisoned_csv(path: &Path) -> Result<PoisonedSet, AttackError> {
    let file = File::open(path).map_err(|e| AttackError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| AttackError::InvalidConfig("empty poisoned csv".into()))?
        .map_err(|e| AttackError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
    check_header(&header, &[POISON_LABEL_COLUMN])?;

    let mut records = Vec::new();
    let mut labels = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line.map_err(|e| AttackError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        if line.is_empty() {
            continue;
        }
        let (record, extra) = parse_row(&line, idx + 1, 1)?;
        let label = match extra[0].as_str() {
            "0" => 0u8,
            "1" => 1u8,
            other => {
                return Err(AttackError::InvalidConfig(format!(
                    "row {}: is_poisoned must be 0 or 1, got {other}",
                    idx + 1
                )))
            }
        };
        records.push(record);
        labels.push(label);
    }
    Ok(PoisonedSet {
        records,
        labels,
        skipped: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::FgsmVariant;
    use plr_data::Provenance;
    use plr_regress::fit_least_squares;

    fn training_set(n: usize) -> RecordSet {
        let records: Vec<Record> = (0..n)
            .map(|i| {
                let x = i as f64;
                Record {
                    x_coord: x,
                    y_coord: (x * 0.7).sin() * 10.0,
                    distance: 1.0 + x,
                    pathloss: 60.0 + 2.0 * x + (x * 1.3).cos(),
                    doa_phi: (x * 13.0) % 180.0 - 90.0,
                    doa_theta: 45.0 + (x % 90.0),
                    dod_phi: (x * 7.0) % 180.0 - 90.0,
                    dod_theta: 30.0 + (x % 120.0),
                    phase: (x * 31.0) % 360.0,
                    power: 1e-10 * (1.0 + x),
                    time_of_arrival: 1e-8 * (1.0 + x),
                    los: (i % 2) as u8,
                }
            })
            .collect();
        RecordSet::new(records, Provenance::Generated).unwrap()
    }

    #[test]
    fn zero_fraction_changes_nothing() {
        let set = training_set(20);
        let model = fit_least_squares(&set).unwrap();
        let config = AttackConfig {
            fraction: 0.0,
            ..AttackConfig::default()
        };
        let out = poison(&set, &model, &config).unwrap();
        assert_eq!(out.records, set.records());
        assert!(out.labels.iter().all(|l| *l == 0));
        assert_eq!(out.skipped, 0);
    }

    #[test]
    fn fraction_rounds_to_victim_count() {
        let set = training_set(20);
        let model = fit_least_squares(&set).unwrap();
        for (n, fraction, expect) in [(10, 0.6, 6usize), (20, 0.25, 5), (20, 0.99999, 20)] {
            let subset = RecordSet::new(
                set.records()[..n].to_vec(),
                Provenance::Generated,
            )
            .unwrap();
            let config = AttackConfig {
                fraction,
                ..AttackConfig::default()
            };
            let out = poison(&subset, &model, &config).unwrap();
            assert_eq!(out.poisoned_count(), expect, "n={n} fraction={fraction}");
        }
    }

    #[test]
    fn same_seed_reproduces_bit_for_bit() {
        let set = training_set(40);
        let model = fit_least_squares(&set).unwrap();
        let config = AttackConfig {
            fraction: 0.5,
            ..AttackConfig::default()
        };
        let a = poison(&set, &model, &config).unwrap();
        let b = poison(&set, &model, &config).unwrap();
        assert_eq!(a.labels, b.labels);
        for (x, y) in a.records.iter().zip(&b.records) {
            for (u, v) in x.values().iter().zip(y.values().iter()) {
                assert_eq!(u.to_bits(), v.to_bits());
            }
        }
        let other = AttackConfig {
            seed: 43,
            ..config
        };
        let c = poison(&set, &model, &other).unwrap();
        assert_ne!(a.labels, c.labels, "different seed picks other victims");
    }

    #[test]
    fn targets_stay_byte_identical_under_every_method() {
        let set = training_set(30);
        let model = fit_least_squares(&set).unwrap();
        for method in [AttackMethod::Fgsm, AttackMethod::Distance, AttackMethod::Lowprofool] {
            let config = AttackConfig {
                method,
                fraction: 1.0,
                fgsm_variant: FgsmVariant::Maximize,
                ..AttackConfig::default()
            };
            let out = poison(&set, &model, &config).unwrap();
            for (before, after) in set.records().iter().zip(&out.records) {
                assert_eq!(
                    before.pathloss.to_bits(),
                    after.pathloss.to_bits(),
                    "{method:?} must never touch the target column"
                );
            }
        }
    }

    #[test]
    fn distance_no_candidate_victims_are_skipped_not_fatal() {
        // every record has the same pathloss: the gap is never cleared
        let records: Vec<Record> = training_set(10)
            .records()
            .iter()
            .map(|r| {
                let mut r = *r;
                r.pathloss = 80.0;
                r
            })
            .collect();
        let set = RecordSet::new(records, Provenance::Generated).unwrap();
        let model = fit_least_squares(&training_set(20)).unwrap();
        let config = AttackConfig {
            method: AttackMethod::Distance,
            fraction: 1.0,
            ..AttackConfig::default()
        };
        let out = poison(&set, &model, &config).unwrap();
        assert_eq!(out.skipped, 10);
        assert_eq!(out.poisoned_count(), 0);
        assert_eq!(out.records, set.records());
    }

    #[test]
    fn poisoned_csv_round_trips_with_labels() {
        let set = training_set(12);
        let model = fit_least_squares(&set).unwrap();
        let config = AttackConfig {
            fraction: 0.5,
            ..AttackConfig::default()
        };
        let out = poison(&set, &model, &config).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("poisoned.csv");
        save_poisoned_csv(&out, &path).unwrap();
        let back = load_poisoned_csv(&path).unwrap();
        assert_eq!(back.labels, out.labels);
        for (x, y) in out.records.iter().zip(&back.records) {
            for (u, v) in x.values().iter().zip(y.values().iter()) {
                assert_eq!(u.to_bits(), v.to_bits());
            }
        }
    }

    #[test]
    fn victim_subset_mse_is_monotone_in_epsilon_for_maximize() {
        let set = training_set(60);
        let model = fit_least_squares(&set).unwrap();
        let mut previous = f64::NEG_INFINITY;
        for epsilon in [1e-3, 1e-2, 1e-1, 0.5, 1.0] {
            let config = AttackConfig {
                fraction: 1.0,
                epsilon,
                fgsm_variant: FgsmVariant::Maximize,
                ..AttackConfig::default()
            };
            let out = poison(&set, &model, &config).unwrap();
            let mse: f64 = out
                .records
                .iter()
                .map(|r| (model.predict(r).unwrap() - r.pathloss).powi(2))
                .sum::<f64>()
                / out.records.len() as f64;
            assert!(
                mse >= previous,
                "mse {mse} at eps {epsilon} fell below {previous}"
            );
            previous = mse;
        }
    }
}
