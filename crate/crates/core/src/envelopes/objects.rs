use std::sync::Arc;

use crate::error::Result;
use crate::essentials::is_essential_mono;
use crate::kernel::{KernelError, MorphismId, ObjectId, Tier};

/// Every `h: A -> X` extends along every mono `m: A -> B` between core objects.
pub fn is_injective(tier: &Tier, x: ObjectId) -> Result<bool> {
    let c = tier.cat();
    if x.0 as usize >= c.object_count() {
        return Err(KernelError::UnknownObject(x).into());
    }
    for &a in tier.core() {
        let into_x = c.hom(a, x);
        for &b in tier.core() {
            for &m in c.hom(a, b).iter() {
                if !tier.is_mono(m) {
                    continue;
                }
                let out_of_b = c.hom(b, x);
                for &h in into_x.iter() {
                    if !out_of_b.iter().any(|&k| c.compose(k, m) == h) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn is_projective(tier: &Arc<Tier>, x: ObjectId) -> Result<bool> {
    is_injective(&tier.opposite(), x)
}

pub fn injective_objects(tier: &Tier) -> Result<Vec<ObjectId>> {
    let mut out = Vec::new();
    for &x in tier.core() {
        if is_injective(tier, x)? {
            out.push(x);
        }
    }
    Ok(out)
}

pub fn projective_objects(tier: &Arc<Tier>) -> Result<Vec<ObjectId>> {
    injective_objects(&tier.opposite())
}

/// An essential mono into an injective object.
pub fn is_injective_envelope(tier: &Tier, m: MorphismId) -> Result<bool> {
    Ok(is_essential_mono(tier, m)? && is_injective(tier, tier.cat().cod(m))?)
}

pub fn is_projective_cover(tier: &Arc<Tier>, e: MorphismId) -> Result<bool> {
    is_injective_envelope(&tier.opposite(), e)
}

/// All injective envelopes of `a` with codomain in the core.
pub fn injective_envelopes_of(tier: &Tier, a: ObjectId) -> Result<Vec<MorphismId>> {
    let c = tier.cat();
    let mut out = Vec::new();
    for &y in tier.core() {
        for &m in c.hom(a, y).iter() {
            if is_injective_envelope(tier, m)? {
                out.push(m);
            }
        }
    }
    Ok(out)
}
