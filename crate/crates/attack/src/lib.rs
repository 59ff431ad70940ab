//! Adversarial perturbations of pathloss records against a fitted linear
//! model: one-step gradient-sign attacks (three direction variants, plus
//! the replace form behind a flag), a donor-based distance attack, and a
//! weighted-norm iterative attack. `poison` applies any of them to a
//! seeded fraction of a record set with ground-truth labels.

mod config;
mod distance;
mod error;
mod fgsm;
mod lowprofool;
mod poison;

pub use config::{
    AttackConfig, AttackMethod, DistanceParams, EpsilonScaling, FgsmVariant, LowProFoolParams,
};
pub use distance::distance_based_attack;
pub use error::AttackError;
pub use fgsm::{fgsm_perturb, fgsm_standardized};
pub use lowprofool::lowprofool_perturb;
pub use poison::{
    attack_record, load_poisoned_csv, poison, save_poisoned_csv, PoisonedSet,
    POISON_LABEL_COLUMN,
};
