//! Categories of fractions for a class of monos with a right calculus of
//! fractions, and the comparison with a localization.

mod calculus;
mod class;
mod fractions;
mod theorems;

pub use crate::functors::{is_equivalence, quasi_inverse};
pub use calculus::{check_right_fraction_calculus, ore_square, ore_square_exhaustive, CalculusVerdict};
pub use class::MorphismClass;
pub use fractions::{
    compose_spans, compose_spans_exhaustive, induced_functor, span_cap_from_env, span_equivalent, spec_build,
    spec_build_for, SpanFraction, SpecCategory, DEFAULT_SPAN_CAP,
};
pub use theorems::{
    bimorphism_mismatches, projection_violations, verify_bimorphism_classes, verify_fraction_equivalence,
    verify_self_duality,
};
