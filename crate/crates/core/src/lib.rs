//! Exhaustive computations in finite categories.
//!
//! The crate decides essential and pullback-stable essential monomorphisms,
//! checks localizations and weak fibrations, builds spectral categories as
//! categories of fractions, certifies injective envelopes and projective
//! covers, and ships a corpus of finite categories on which all of these are
//! cross-checked.

pub mod kernel;
pub mod envelopes;
pub mod error;
pub mod corpus;
pub mod essentials;
pub mod functors;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
