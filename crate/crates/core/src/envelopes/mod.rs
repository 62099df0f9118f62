//! Injective and projective objects, envelopes and covers, and their
//! construction from a localization.

mod certificate;
mod objects;
mod theorems;

pub use certificate::{cover_via_counit, envelope_via_unit, EnvelopeCertificate, EnvelopeKind};
pub use objects::{
    injective_envelopes_of, injective_objects, is_injective, is_injective_envelope, is_projective,
    is_projective_cover, projective_objects,
};
pub use theorems::{
    verify_injective_envelopes, verify_natural_envelopes, verify_projective_covers, verify_semilattice_example,
};
