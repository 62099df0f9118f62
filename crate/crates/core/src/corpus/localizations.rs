//! Localization triples and adjunctions between concrete categories.

use std::sync::Arc;

use super::thin::terminal_category;
use super::tiers::{by_size, carried, check_bounds, closed_tier, retagging, small_objects};
use crate::error::Result;
use crate::functors::{Adjunction, Functor, LocalizationTriple};
use crate::kernel::concrete::{encode, function_code};
use crate::kernel::{Category, ConcreteCategory, ObjectId, Tier};

fn concrete_triple(name: String, c: Arc<ConcreteCategory>, ct: Arc<Tier>, xc: Arc<ConcreteCategory>, xt: Arc<Tier>) -> Result<LocalizationTriple> {
    let f = retagging("F", &ct, &xt, by_size(&c, |k| xc.discrete_object(k)));
    let g = retagging("G", &xt, &ct, by_size(&xc, |k| c.indiscrete_object(k)));
    let h = retagging("H", &xt, &ct, by_size(&xc, |k| c.discrete_object(k)));
    let (fo, go, ho) = (f.clone(), g.clone(), h.clone());
    let cc = c.clone();
    let unit = move |a: ObjectId| {
        let b = go.obj(fo.obj(a)?)?;
        Some(carried(a, b, cc.size(a)))
    };
    let xi = xc.clone();
    let counit = move |x: ObjectId| Some(xi.identity(x));
    let upper = Adjunction::new("F -| G", f.clone(), g, unit, counit)?;
    let xi = xc.clone();
    let zeta = move |x: ObjectId| Some(xi.identity(x));
    let fo = f.clone();
    let cc = c.clone();
    let theta = move |a: ObjectId| {
        let b = ho.obj(fo.obj(a)?)?;
        Some(carried(b, a, cc.size(a)))
    };
    let lower = Adjunction::new("H -| F", h, f, zeta, theta)?;
    Ok(LocalizationTriple { name, upper, lower })
}

/// Finite preorders (finite topological spaces) over finite sets: `F`
/// forgets, `G` is indiscrete, `H` discrete; every transformation is the
/// identity on underlying sets.
pub fn finpreord_localization(n: usize, ambient: usize) -> Result<LocalizationTriple> {
    check_bounds(n, ambient)?;
    let c = Arc::new(ConcreteCategory::preorders(ambient)?);
    let ct = closed_tier("FinPreord", c.clone(), n, ambient)?;
    let xc = Arc::new(ConcreteCategory::sets(ambient)?);
    let xt = closed_tier("FinSet", xc.clone(), n, ambient)?;
    concrete_triple(format!("finpreord({n},{ambient})"), c, ct, xc, xt)
}

/// Pointed finite preorders over pointed finite sets.
pub fn pointed_finpreord_localization(n: usize, ambient: usize) -> Result<LocalizationTriple> {
    check_bounds(n, ambient)?;
    let c = Arc::new(ConcreteCategory::pointed_preorders(ambient)?);
    let ct = closed_tier("FinPreord*", c.clone(), n, ambient)?;
    let xc = Arc::new(ConcreteCategory::pointed_sets(ambient)?);
    let xt = closed_tier("FinSet*", xc.clone(), n, ambient)?;
    concrete_triple(format!("pointed-finpreord({n},{ambient})"), c, ct, xc, xt)
}

/// `F = G = H = 1` with identity transformations.
pub fn identity_localization(tier: &Arc<Tier>) -> Result<LocalizationTriple> {
    let id = Functor::identity(tier);
    let c = tier.ambient().clone();
    let ident = {
        let c = c.clone();
        move |a: ObjectId| ((a.0 as usize) < c.object_count()).then(|| c.identity(a))
    };
    let upper = Adjunction::new("1 -| 1", id.clone(), id.clone(), ident.clone(), ident.clone())?;
    let lower = Adjunction::new("1 -| 1", id.clone(), id, ident.clone(), ident)?;
    Ok(LocalizationTriple {
        name: format!("identity({})", tier.name()),
        upper,
        lower,
    })
}

/// The unique functor to the terminal category.
pub fn to_terminal(tier: &Arc<Tier>) -> Functor {
    let one = Tier::whole(Arc::new(terminal_category()));
    let id = one.cat().identity(ObjectId(0));
    Functor::new(
        format!("!_{}", tier.name()),
        tier.clone(),
        one,
        |_| Some(ObjectId(0)),
        move |_| Some(id),
    )
}

/// For a thin category with top and bottom: `F` to the terminal category,
/// `G` picks the top, `H` the bottom.
pub fn thin_to_terminal(tier: &Arc<Tier>) -> Result<LocalizationTriple> {
    let c = tier.cat();
    let top = crate::kernel::terminal(c).ok_or_else(|| crate::Error::Invalid(format!("{} has no largest element", c.name())))?;
    let bottom = crate::kernel::initial(c).ok_or_else(|| crate::Error::Invalid(format!("{} has no least element", c.name())))?;
    let f = to_terminal(tier);
    let one = f.target().clone();
    let pick = |name: &str, o: ObjectId| {
        let c = tier.ambient().clone();
        let id = c.identity(o);
        Functor::new(name, one.clone(), tier.clone(), move |_| Some(o), move |_| Some(id))
    };
    let (g, h) = (pick("top", top), pick("bottom", bottom));
    let amb = tier.ambient().clone();
    let unit = {
        let amb = amb.clone();
        move |a: ObjectId| amb.hom(a, top).first().copied()
    };
    let counit = {
        let one = one.ambient().clone();
        move |_| Some(one.identity(ObjectId(0)))
    };
    let upper = Adjunction::new("! -| top", f.clone(), g, unit, counit.clone())?;
    let theta = move |a: ObjectId| amb.hom(bottom, a).first().copied();
    let lower = Adjunction::new("bottom -| !", h, f, counit, theta)?;
    Ok(LocalizationTriple {
        name: format!("{} over 1", tier.name()),
        upper,
        lower,
    })
}

/// Free basepoint `F: FinSet -> FinSet*+I` (with `F(0) = I`) left adjoint to
/// the forgetful functor. Counits are epi; units `n -> n+1` are not.
pub fn free_basepoint_adjunction(n: usize, ambient: usize) -> Result<Adjunction> {
    let c = Arc::new(ConcreteCategory::sets(ambient)?);
    let ct = Tier::new(format!("FinSet({n},{ambient})"), c.clone(), small_objects(&c, n))?;
    let xc = Arc::new(ConcreteCategory::pointed_sets_with_initial(ambient + 1)?);
    let xt = Tier::new(format!("FinSet*+I({},{})", n + 1, ambient + 1), xc.clone(), small_objects(&xc, n + 1))?;
    // Object k of FinSet*+I has k points; k = 0 is I.
    let free_obj = |k: usize| if k == 0 { ObjectId(0) } else { ObjectId(k as u32 + 1) };
    let f = {
        let c = c.clone();
        Functor::new(
            "Free",
            ct.clone(),
            xt.clone(),
            move |a: ObjectId| ((a.0 as usize) <= ambient).then(|| free_obj(a.0 as usize)),
            move |m| {
                let (d, e) = (c.dom(m), c.cod(m));
                if d.0 == 0 {
                    return Some(encode(ObjectId(0), free_obj(e.0 as usize), 0));
                }
                let mut values = vec![0u8];
                values.extend(c.function(m).iter().map(|v| v + 1));
                Some(encode(free_obj(d.0 as usize), free_obj(e.0 as usize), function_code(&values, e.0 as usize + 1)))
            },
        )
    };
    let u = {
        let xc = xc.clone();
        Functor::new(
            "U",
            xt.clone(),
            ct.clone(),
            move |x: ObjectId| ((x.0 as usize) <= ambient).then_some(x),
            move |m| {
                let (d, e) = (xc.dom(m), xc.cod(m));
                ((e.0 as usize) <= ambient).then(|| encode(d, e, decode_code(m)))
            },
        )
    };
    let unit = move |a: ObjectId| {
        let k = a.0 as usize;
        if k == 0 {
            return Some(encode(a, a, 0));
        }
        let values: Vec<u8> = (1..=k as u8).collect();
        (k < ambient).then(|| encode(a, ObjectId(k as u32 + 1), function_code(&values, k + 1)))
    };
    let counit = move |x: ObjectId| {
        let k = x.0 as usize;
        if k == 0 {
            return Some(encode(x, x, 0));
        }
        let mut values = vec![0u8];
        values.extend(0..k as u8);
        (k <= ambient).then(|| encode(ObjectId(k as u32 + 1), x, function_code(&values, k)))
    };
    Adjunction::new("Free -| U", f, u, unit, counit)
}

fn decode_code(m: crate::kernel::MorphismId) -> u64 {
    crate::kernel::concrete::decode(m).2
}
