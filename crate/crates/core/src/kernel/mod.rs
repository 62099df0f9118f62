//! Finite categories, morphism classification and finite (co)limits.

mod category;
mod classify;
pub mod concrete;
mod limits;
mod opposite;
mod table;
mod tier;
mod validate;

pub use category::{find_in_hom, find_iso, inverse, Category, Hom, MorphismId, ObjectId, Objects};
pub use classify::{classify_basic, is_epi, is_iso, is_mono, retraction, section, MorphismFlags};
pub use concrete::{Carrier, ConcreteCategory, Structure};
pub use limits::{
    all_pullbacks, all_pushouts, initial, is_pullback, pullback, pushout, terminal,
    PullbackResult, PushoutResult,
};
pub use opposite::{opposite, Opposite};
pub use table::{FinCategory, FinCategoryBuilder};
pub use tier::Tier;
pub use validate::{validate, validate_on, ValidationReport, Violation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("unknown object {0}")]
    UnknownObject(ObjectId),
    #[error("unknown morphism {0}")]
    UnknownMorphism(MorphismId),
    #[error("morphism {0} is not an endomorphism")]
    NotAnEndomorphism(MorphismId),
    #[error("object {0} has no identity")]
    MissingIdentity(String),
    #[error("size bound {requested} exceeds the supported maximum {limit}")]
    TooLarge { requested: usize, limit: usize },
    #[error("{0} and {1} do not form a cospan")]
    NotACospan(MorphismId, MorphismId),
    #[error("{0} and {1} do not form a span")]
    NotASpan(MorphismId, MorphismId),
    #[error("tier {tier} claims {kind} closure but {witness} has none")]
    ClosureClaim {
        tier: String,
        kind: &'static str,
        witness: String,
    },
    #[error("tier {tier} is {kind}-closed yet {witness} has none")]
    Integrity {
        tier: String,
        kind: &'static str,
        witness: String,
    },
}
