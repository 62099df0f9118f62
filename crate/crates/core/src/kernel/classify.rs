use std::collections::HashSet;

use serde::Serialize;

use super::category::{find_in_hom, inverse, Category, MorphismId};
use super::KernelError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MorphismFlags {
    pub mono: bool,
    pub epi: bool,
    pub split_mono: bool,
    pub split_epi: bool,
    pub iso: bool,
    pub bimorphism: bool,
}

/// Left-cancellable: `h |-> f h` is injective on every `Hom(Q, dom f)`.
/// Only a generating family is tried as `Q`.
pub fn is_mono(c: &dyn Category, f: MorphismId) -> bool {
    let a = c.dom(f);
    let probes = c.separating_probes().unwrap_or_else(|| c.objects().collect());
    probes.into_iter().all(|q| {
        let hom = c.hom(q, a);
        let mut seen = HashSet::with_capacity(hom.len());
        hom.iter().all(|&h| seen.insert(c.compose(f, h)))
    })
}

/// Right-cancellable: `h |-> h f` is injective on every `Hom(cod f, Q)`.
pub fn is_epi(c: &dyn Category, f: MorphismId) -> bool {
    let b = c.cod(f);
    let probes = c.coseparating_probes().unwrap_or_else(|| c.objects().collect());
    probes.into_iter().all(|q| {
        let hom = c.hom(b, q);
        let mut seen = HashSet::with_capacity(hom.len());
        hom.iter().all(|&h| seen.insert(c.compose(h, f)))
    })
}

/// A retraction `r` with `r f = id`, if any.
pub fn retraction(c: &dyn Category, f: MorphismId) -> Option<MorphismId> {
    let id = c.identity(c.dom(f));
    find_in_hom(c, c.cod(f), c.dom(f), |r| c.compose(r, f) == id)
}

/// A section `s` with `f s = id`, if any.
pub fn section(c: &dyn Category, f: MorphismId) -> Option<MorphismId> {
    let id = c.identity(c.cod(f));
    find_in_hom(c, c.cod(f), c.dom(f), |s| c.compose(f, s) == id)
}

pub fn is_iso(c: &dyn Category, f: MorphismId) -> bool {
    inverse(c, f).is_some()
}

pub fn classify_basic(c: &dyn Category, f: MorphismId) -> Result<MorphismFlags, KernelError> {
    if !c.contains_morphism(f) {
        return Err(KernelError::UnknownMorphism(f));
    }
    let mono = is_mono(c, f);
    let epi = is_epi(c, f);
    let split_mono = mono && retraction(c, f).is_some();
    let split_epi = epi && section(c, f).is_some();
    Ok(MorphismFlags {
        mono,
        epi,
        split_mono,
        split_epi,
        iso: split_mono && split_epi,
        bimorphism: mono && epi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::concrete::ConcreteCategory;
    use crate::kernel::ObjectId;

    #[test]
    fn identity_has_every_flag() {
        let c = ConcreteCategory::sets(3).unwrap();
        let flags = classify_basic(&c, c.identity(ObjectId(2))).unwrap();
        assert!(flags.mono && flags.epi && flags.split_mono && flags.split_epi);
        assert!(flags.iso && flags.bimorphism);
    }

    #[test]
    fn collapse_of_two_points_is_split_epi_only() {
        let c = ConcreteCategory::sets(3).unwrap();
        let f = c.morphism(ObjectId(2), ObjectId(1), &[0, 0]).unwrap();
        let flags = classify_basic(&c, f).unwrap();
        assert!(flags.epi && flags.split_epi);
        assert!(!flags.mono && !flags.iso && !flags.bimorphism);
    }

    #[test]
    fn unknown_morphism_is_an_error() {
        let c = ConcreteCategory::sets(2).unwrap();
        let bogus = crate::kernel::concrete::encode(ObjectId(1), ObjectId(0), 0);
        assert!(matches!(
            classify_basic(&c, bogus),
            Err(KernelError::UnknownMorphism(_))
        ));
    }
}
