//! Tiers of finite sets and pointed sets, and the concrete functors between
//! the categories of structured sets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functors::Functor;
use crate::kernel::concrete::{decode, encode, function_code};
use crate::kernel::{Category, ConcreteCategory, MorphismId, ObjectId, Tier};

pub(crate) fn check_bounds(n: usize, ambient: usize) -> Result<()> {
    if ambient < n * n {
        return Err(Error::Invalid(format!(
            "ambient bound {ambient} is below the square of the core bound {n}"
        )));
    }
    Ok(())
}

/// Core objects of a concrete category: every object with at most `n` points.
pub(crate) fn small_objects(c: &ConcreteCategory, n: usize) -> Vec<ObjectId> {
    c.objects().filter(|&a| c.size(a) <= n).collect()
}

/// Finite sets `0..=ambient`, core `0..=n`. Pullback closure is checked
/// always, pushout closure when `ambient >= 2n`.
pub fn finset_tier(n: usize, ambient: usize) -> Result<Arc<Tier>> {
    check_bounds(n, ambient)?;
    closed_tier("FinSet", Arc::new(ConcreteCategory::sets(ambient)?), n, ambient)
}

/// Tier of the objects with at most `n` points; pullback closure is always
/// claimed, pushout closure when `ambient >= 2n`.
pub(crate) fn closed_tier(prefix: &str, c: Arc<ConcreteCategory>, n: usize, ambient: usize) -> Result<Arc<Tier>> {
    let core = small_objects(&c, n);
    let tier = Tier::new(format!("{prefix}({n},{ambient})"), c, core)?;
    tier.require_closure(true, ambient >= 2 * n)?;
    Ok(tier)
}

/// Pointed sets with a freely added initial object `I`; core is `I` and the
/// pointed sets with at most `n` points.
pub fn pointed_finset_with_initial(n: usize, ambient: usize) -> Result<Arc<Tier>> {
    check_bounds(n, ambient)?;
    closed_tier("FinSet*+I", Arc::new(ConcreteCategory::pointed_sets_with_initial(ambient)?), n, ambient)
}

/// Pointed sets with `1..=ambient` points, core up to `n` points.
pub fn pointed_finset_tier(n: usize, ambient: usize) -> Result<Arc<Tier>> {
    check_bounds(n, ambient)?;
    closed_tier("FinSet*", Arc::new(ConcreteCategory::pointed_sets(ambient)?), n, ambient)
}

/// Identity map of an `n`-point carrier between two objects with `n` points.
pub(crate) fn carried(dom: ObjectId, cod: ObjectId, n: usize) -> MorphismId {
    let values: Vec<u8> = (0..n as u8).collect();
    encode(dom, cod, function_code(&values, n))
}

/// A functor between concrete categories that keeps every underlying
/// function and moves objects by `objects`.
pub fn retagging(
    name: impl Into<String>,
    source: &Arc<Tier>,
    target: &Arc<Tier>,
    objects: Vec<Option<ObjectId>>,
) -> Functor {
    let objects = Arc::new(objects);
    let lookup = {
        let objects = objects.clone();
        move |a: ObjectId| objects.get(a.0 as usize).copied().flatten()
    };
    let x = target.ambient().clone();
    Functor::new(name, source.clone(), target.clone(), lookup.clone(), move |f| {
        let (d, c, code) = decode(f);
        let g = encode(lookup(d)?, lookup(c)?, code);
        x.contains_morphism(g).then_some(g)
    })
}

/// Object map sending each object of `from` to the object of `to` produced
/// by `pick` from its size.
pub(crate) fn by_size(
    from: &ConcreteCategory,
    pick: impl Fn(usize) -> Option<ObjectId>,
) -> Vec<Option<ObjectId>> {
    from.objects().map(|a| pick(from.size(a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_enforced() {
        assert!(finset_tier(2, 3).is_err());
        assert!(finset_tier(2, 4).is_ok());
    }

    #[test]
    fn finset_tier_is_closed_both_ways() {
        let t = finset_tier(2, 4).unwrap();
        assert!(t.pullback_closed());
        assert!(t.pushout_closed());
    }
}
