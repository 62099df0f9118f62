//! Functors, natural transformations, adjunctions and localizations.

mod adjunction;
mod fibration;
mod functor;
mod properties;
mod theorems;

pub use adjunction::{validate_adjunction, Adjunction, AdjunctionReport, LocalizationTriple};
pub use fibration::{weak_fibration_kind, weak_opfibration, FibrationKind, FibrationReport, OpfibrationReport};
pub use functor::{same_ambient, Functor, NaturalTransformation};
pub use properties::{
    full_and_faithful, functor_properties, is_equivalence, preserves_pullbacks, preserves_terminal, quasi_inverse,
    EquivalenceReport, Property, PropertyReport,
};
pub use theorems::{
    check_sle_hypotheses, is_faithful_essential_localization, verify_essential_preservation,
    verify_iso_detection, verify_localization_remarks, verify_preservation_theorems,
    verify_stable_preservation, SleVerdict,
};
