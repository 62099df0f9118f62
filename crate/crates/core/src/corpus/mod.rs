//! Deterministic builders for the example categories, functors and
//! localizations, and a catalog of the conditions each tier satisfies.

mod abelian;
mod catalog;
mod localizations;
mod thin;
mod tiers;

pub use abelian::{ab_fragment, default_fragment, CyclicSum, MAX_GROUP_ORDER};
pub use catalog::{catalog, names, resolve, verify_condition_implications, verify_condition_matrix, CorpusItem, CorpusSpec, Expectation};
pub use localizations::{
    finpreord_localization, free_basepoint_adjunction, identity_localization,
    pointed_finpreord_localization, thin_to_terminal, to_terminal,
};
pub use thin::{arrow, boolean_b2, chain, discrete, semilattice, terminal_category, thin_category};
pub use tiers::{finset_tier, pointed_finset_tier, pointed_finset_with_initial, retagging};
