use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::essentials::{check_condition, is_essential_mono, ConditionTag};
use crate::functors::LocalizationTriple;
use crate::kernel::{MorphismId, ObjectId};

use super::objects::is_injective;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnvelopeKind {
    InjectiveEnvelope,
    ProjectiveCover,
}

/// Evidence that a unit (or counit) component is an injective envelope
/// (or projective cover). Each flag is computed independently.
#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeCertificate {
    pub kind: EnvelopeKind,
    pub object: ObjectId,
    pub object_label: String,
    pub morphism: MorphismId,
    pub morphism_label: String,
    /// Codomain injective, or domain projective.
    pub extremal: bool,
    /// Essential mono, or essential epi.
    pub essential: bool,
    /// Every naturality square at this object commutes.
    pub natural: bool,
    /// The object is injective (projective) exactly when the component is an iso.
    pub iso_iff_extremal: bool,
}

impl EnvelopeCertificate {
    pub fn is_valid(&self) -> bool {
        self.extremal && self.essential && self.natural && self.iso_iff_extremal
    }
}

impl fmt::Display for EnvelopeCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ext, ess) = match self.kind {
            EnvelopeKind::InjectiveEnvelope => ("codomain injective", "essential mono"),
            EnvelopeKind::ProjectiveCover => ("domain projective", "essential epi"),
        };
        write!(
            f,
            "{} at {}: {ext} {}, {ess} {}, natural {}, iso iff extremal {}",
            self.morphism_label, self.object_label, self.extremal, self.essential, self.natural, self.iso_iff_extremal
        )
    }
}

pub(crate) fn certify(l: &LocalizationTriple, a: ObjectId, kind: EnvelopeKind, split: &str) -> Result<EnvelopeCertificate> {
    let ct = l.c();
    let c = ct.cat();
    if !ct.in_core(a) {
        return Err(Error::Invalid(format!("{} is not a core object of {}", c.object_label(a), ct.name())));
    }
    let cond = check_condition(l.x(), ConditionTag::MonoSplit)?;
    if !cond.holds {
        let w = cond.witness.map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::Hypothesis(format!("{split} fails: {w}")));
    }
    let eta = l.eta();
    let m = eta
        .component(a)
        .ok_or_else(|| Error::Invalid(format!("no unit component at {}", c.object_label(a))))?;
    let gf = crate::functors::Functor::compose(l.g(), l.f())?;
    let mut natural = true;
    'outer: for &b in ct.core() {
        let Some(mb) = eta.component(b) else {
            natural = false;
            break;
        };
        for &f in c.hom(a, b).iter() {
            match gf.mor(f) {
                Some(gff) if c.compose(gff, m) == c.compose(mb, f) => {}
                _ => {
                    natural = false;
                    break 'outer;
                }
            }
        }
    }
    let extremal = is_injective(ct, c.cod(m))?;
    let essential = is_essential_mono(ct, m)?;
    let iso_iff_extremal = ct.is_iso(m) == is_injective(ct, a)?;
    Ok(EnvelopeCertificate {
        kind,
        object: a,
        object_label: c.object_label(a),
        morphism: m,
        morphism_label: c.morphism_label(m),
        extremal,
        essential,
        natural,
        iso_iff_extremal,
    })
}

/// Certificate for the unit component at `a` as an injective envelope.
/// Needs every mono of X to split; otherwise a hypothesis error.
pub fn envelope_via_unit(l: &LocalizationTriple, a: ObjectId) -> Result<EnvelopeCertificate> {
    certify(l, a, EnvelopeKind::InjectiveEnvelope, "mono-split")
}

/// Certificate for the counit `HF(a) -> a` of the lower adjunction as a
/// projective cover. Needs every epi of X to split.
pub fn cover_via_counit(l: &LocalizationTriple, a: ObjectId) -> Result<EnvelopeCertificate> {
    certify(&l.opposite(), a, EnvelopeKind::ProjectiveCover, "co-mono-split")
}
