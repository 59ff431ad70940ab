//! Fast-gradient-sign perturbations of single records.

use plr_data::{Record, FEATURE_COUNT};
use plr_regress::LinearModel;

use crate::config::{EpsilonScaling, FgsmVariant};

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// The crafted standardized feature vector, before the integer-feature
/// projection that [`fgsm_perturb`] applies on the way back to original
/// units. Directions follow the variant:
///
/// * plain: sign of the loss gradient 2*residual*w (zero residual leaves
///   the record untouched);
/// * fluctuation: sign(residual) * sign(w), with sign(0) taken as +1 so
///   zero-residual records still move;
/// * maximize: sign(w), so every prediction shifts upward.
pub fn fgsm_standardized(
    model: &LinearModel,
    record: &Record,
    epsilon: f64,
    scaling: EpsilonScaling,
    variant: FgsmVariant,
    replace: bool,
) -> [f64; FEATURE_COUNT] {
    let scaled = model.scaler.standardize(&record.features());
    let residual = model.predict_standardized(&scaled) - record.pathloss;
    let residual_sign = if residual >= 0.0 { 1.0 } else { -1.0 };
    let mut out = scaled;
    for j in 0..FEATURE_COUNT {
        let direction = match variant {
            FgsmVariant::Plain => sign(2.0 * residual * model.weights[j]),
            FgsmVariant::Fluctuation => residual_sign * sign(model.weights[j]),
            FgsmVariant::Maximize => sign(model.weights[j]),
        };
        let step = match scaling {
            EpsilonScaling::Absolute => epsilon,
            EpsilonScaling::FeatureScaled => epsilon * model.scaler.range_std[j],
        };
        out[j] = if replace {
            step * direction
        } else {
            scaled[j] + step * direction
        };
    }
    out
}

/// One-step FGSM on a record. The pathloss target is never modified and
/// `los` is re-rounded to {0, 1} after mapping back to original units.
pub fn fgsm_perturb(
    model: &LinearModel,
    record: &Record,
    epsilon: f64,
    scaling: EpsilonScaling,
    variant: FgsmVariant,
    replace: bool,
) -> Record {
    let crafted = fgsm_standardized(model, record, epsilon, scaling, variant, replace);
    let feats = model.scaler.destandardize(&crafted);
    let mut out = *record;
    out.apply_features(&feats);
    out
}
