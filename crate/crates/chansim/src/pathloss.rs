//! Free-space propagation kernel and power/loss conversions.

use crate::error::ChansimError;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Free-space pathloss in dB: 20*log10(4*pi*d*f / c).
/// Strictly increasing in both distance and frequency.
pub fn free_space_pathloss(distance_m: f64, freq_hz: f64) -> Result<f64, ChansimError> {
    if !distance_m.is_finite() || distance_m <= 0.0 {
        return Err(ChansimError::NonPositive {
            name: "distance",
            value: distance_m,
        });
    }
    if !freq_hz.is_finite() || freq_hz <= 0.0 {
        return Err(ChansimError::NonPositive {
            name: "freq",
            value: freq_hz,
        });
    }
    Ok(20.0 * (4.0 * std::f64::consts::PI * distance_m * freq_hz / SPEED_OF_LIGHT).log10())
}

/// Received power in watts for a transmit power in dBm and a loss in dB.
pub fn received_power_watts(tx_power_dbm: f64, pathloss_db: f64) -> f64 {
    10f64.powf((tx_power_dbm - pathloss_db - 30.0) / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values_at_28ghz() {
        let f = 2.8e10;
        let at = |d: f64| free_space_pathloss(d, f).unwrap();
        assert!((at(1.0) - 61.390_943_848_727_76).abs() < 0.01);
        assert!((at(10.0) - (at(1.0) + 20.0)).abs() < 1e-9, "+20 dB per decade");
        assert!((at(100.0) - 101.390_943_848_727_76).abs() < 0.01);
    }

    #[test]
    fn monotone_in_distance_and_frequency() {
        let mut prev = f64::NEG_INFINITY;
        for d in [0.5, 1.0, 3.0, 10.0, 250.0, 1e4] {
            let v = free_space_pathloss(d, 2.8e10).unwrap();
            assert!(v > prev);
            prev = v;
        }
        let mut prev = f64::NEG_INFINITY;
        for f in [1e9, 2.8e10, 6e10] {
            let v = free_space_pathloss(55.0, f).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn non_positive_inputs_are_domain_errors() {
        assert!(free_space_pathloss(0.0, 1e9).is_err());
        assert!(free_space_pathloss(-1.0, 1e9).is_err());
        assert!(free_space_pathloss(1.0, 0.0).is_err());
    }

    #[test]
    fn power_conversion_round_trips() {
        let pl = 87.3;
        let p = received_power_watts(0.0, pl);
        let back = -30.0 - 10.0 * p.log10();
        assert!((back - pl).abs() / pl < 1e-12);
    }
}
