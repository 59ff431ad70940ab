//! Whole-scenario physics invariants on a mixed LoS/NLoS scene.

use plr_chansim::{generate_scenario, Building, GridSpec, ScenarioConfig, SPEED_OF_LIGHT};
use plr_data::pearson;

fn mixed_scene() -> ScenarioConfig {
    ScenarioConfig {
        bs_position: [-8.0, -8.0, 15.0],
        user_grid: GridSpec {
            origin: [0.0, 0.0],
            nx: 25,
            ny: 25,
            spacing: 1.1,
        },
        buildings: vec![
            Building { x_min: 3.0, x_max: 7.0, y_min: 2.0, y_max: 9.0, height: 22.0 },
            Building { x_min: 14.0, x_max: 19.0, y_min: 10.0, y_max: 16.0, height: 18.0 },
            Building { x_min: 6.0, x_max: 11.0, y_min: 17.0, y_max: 22.0, height: 25.0 },
        ],
        max_reflections: 2,
        ..ScenarioConfig::default()
    }
}

#[test]
fn record_level_laws_hold() {
    let g = generate_scenario(&mixed_scene()).unwrap();
    let records = g.records.records();
    assert!(records.len() >= 100);

    let mut saw_nlos = false;
    for r in records {
        let toa_floor = r.distance / SPEED_OF_LIGHT;
        if r.los == 1 {
            assert_eq!(r.time_of_arrival, toa_floor, "LoS ToA is exactly distance/c");
        } else {
            saw_nlos = true;
            assert!(
                r.time_of_arrival > toa_floor,
                "reflected ToA must exceed the light-distance floor"
            );
        }
        // exact dB <-> watts conversion
        let back = -30.0 - 10.0 * r.power.log10();
        assert!((back - r.pathloss).abs() / r.pathloss < 1e-12);
        assert!(r.phase >= 0.0 && r.phase < 360.0);
        assert!(r.doa_theta >= 0.0 && r.doa_theta <= 180.0);
        assert!(r.doa_phi > -180.0 && r.doa_phi <= 180.0);
        assert!(r.dod_theta >= 0.0 && r.dod_theta <= 180.0);
        assert!(r.dod_phi > -180.0 && r.dod_phi <= 180.0);
    }
    assert!(saw_nlos, "scene must shadow part of the grid");
}

#[test]
fn los_pathloss_strictly_increases_with_distance() {
    let g = generate_scenario(&mixed_scene()).unwrap();
    let mut los: Vec<(f64, f64)> = g
        .records
        .records()
        .iter()
        .filter(|r| r.los == 1)
        .map(|r| (r.distance, r.pathloss))
        .collect();
    los.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for w in los.windows(2) {
        if w[1].0 > w[0].0 {
            assert!(
                w[1].1 > w[0].1,
                "pathloss must rise with distance: {:?} then {:?}",
                w[0],
                w[1]
            );
        }
    }
}

#[test]
fn correlation_signs_match_the_expected_structure() {
    let g = generate_scenario(&mixed_scene()).unwrap();
    let records = g.records.records();
    let col = |f: fn(&plr_data::Record) -> f64| -> Vec<f64> { records.iter().map(f).collect() };
    let pathloss = col(|r| r.pathloss);
    assert!(pearson(&pathloss, &col(|r| r.time_of_arrival)) > 0.0);
    assert!(pearson(&pathloss, &col(|r| r.distance)) > 0.0);
    assert!(pearson(&pathloss, &col(|r| f64::from(r.los))) < 0.0);
    assert!(pearson(&pathloss, &col(|r| r.power)) < 0.0);
}
