//! Property-level checks on splitting, CSV round trips and correlations.

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plr_data::{
    correlation_matrix, load_csv, save_csv, split, Provenance, Record, RecordSet, SplitSpec,
};

fn synthetic_set(n: usize, seed: u64) -> RecordSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records: Vec<Record> = (0..n)
        .map(|i| Record {
            x_coord: i as f64, // unique tag for partition checks
            y_coord: rng.gen_range(-50.0..50.0),
            distance: rng.gen_range(1.0..500.0),
            pathloss: rng.gen_range(60.0..130.0),
            doa_phi: rng.gen_range(-180.0..180.0),
            doa_theta: rng.gen_range(0.0..180.0),
            dod_phi: rng.gen_range(-180.0..180.0),
            dod_theta: rng.gen_range(0.0..180.0),
            phase: rng.gen_range(0.0..360.0),
            power: rng.gen_range(1e-14..1e-9),
            time_of_arrival: rng.gen_range(1e-9..1e-5),
            los: rng.gen_range(0..=1u8),
        })
        .collect();
    RecordSet::new(records, Provenance::Generated).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_is_a_partition_for_every_seed_and_n(n in 3usize..10_000, seed in any::<u64>()) {
        let set = synthetic_set(n, seed ^ 0x5eed);
        let spec = SplitSpec { ratios: (0.4, 0.4, 0.2), seed };
        let (tr, po, te) = split(&set, &spec).unwrap();
        let expect = spec.sizes(n);
        prop_assert_eq!((tr.len(), po.len(), te.len()), expect);
        prop_assert_eq!(tr.len() + po.len() + te.len(), n);

        let mut tags: Vec<u64> = tr
            .records()
            .iter()
            .chain(po.records())
            .chain(te.records())
            .map(|r| r.x_coord as u64)
            .collect();
        tags.sort_unstable();
        tags.dedup();
        prop_assert_eq!(tags.len(), n, "parts overlap or drop records");
    }

    #[test]
    fn csv_round_trip_is_bit_exact(seed in any::<u64>()) {
        let set = synthetic_set(37, seed);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rt.csv");
        save_csv(&set, &path).unwrap();
        let loaded = load_csv(&path).unwrap();
        for (a, b) in set.records().iter().zip(loaded.records()) {
            for (x, y) in a.values().iter().zip(b.values().iter()) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}

#[test]
fn correlation_matrix_is_positive_semidefinite() {
    let set = synthetic_set(400, 7);
    let m = correlation_matrix(&set).unwrap();
    let flat: Vec<f64> = m.iter().flatten().copied().collect();
    let mat = DMatrix::from_row_slice(12, 12, &flat);
    let eig = mat.symmetric_eigen();
    for ev in eig.eigenvalues.iter() {
        assert!(*ev > -1e-8, "eigenvalue {ev} breaks PSD");
    }
}
