use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::functor::Functor;
use crate::error::{Error, Result};
use crate::kernel::{find_iso, inverse, is_pullback, terminal, MorphismId, ObjectId, PullbackResult};
use crate::report::Witness;

/// One functor property with the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Property {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Property {
    fn ok() -> Property {
        Property {
            holds: true,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Property {
        Property {
            holds: false,
            witness: Some(w),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub functor: String,
    pub faithful: Property,
    pub full: Property,
    pub preserves_monos: Property,
    pub reflects_monos: Property,
    pub preserves_epis: Property,
    pub reflects_epis: Property,
    /// Pullbacks of core cospans in the source ambient go to pullbacks.
    pub preserves_pullbacks: Property,
    /// `None` when the source has no terminal object.
    pub preserves_terminal: Option<Property>,
}

impl PropertyReport {
    pub fn preserves_finite_limits(&self) -> bool {
        self.preserves_pullbacks.holds && self.preserves_terminal.as_ref().is_none_or(|p| p.holds)
    }
}

fn mapped(f: &Functor, m: MorphismId) -> MorphismId {
    f.mor(m)
        .unwrap_or_else(|| panic!("{} is undefined on a core morphism", f.name()))
}

/// Fullness and faithfulness over pairs of source core objects.
pub fn full_and_faithful(f: &Functor) -> (Property, Property) {
    let (c, x) = (f.source().cat(), f.target().cat());
    let mut faithful = Property::ok();
    let mut full = Property::ok();
    for &a in f.source().core() {
        for &b in f.source().core() {
            let hom = c.hom(a, b);
            let mut seen: Vec<(MorphismId, MorphismId)> = Vec::with_capacity(hom.len());
            let mut image = HashSet::with_capacity(hom.len());
            for &m in hom.iter() {
                let fm = mapped(f, m);
                if faithful.holds {
                    if let Some(&(prev, _)) = seen.iter().find(|(_, img)| *img == fm) {
                        faithful = Property::fail(Witness::new(c, &[prev, m], "same image"));
                    }
                }
                seen.push((m, fm));
                image.insert(fm);
            }
            if full.holds {
                let (fa, fb) = (f.obj(a).unwrap(), f.obj(b).unwrap());
                if let Some(&missed) = x.hom(fa, fb).iter().find(|g| !image.contains(g)) {
                    full = Property::fail(Witness::new(x, &[missed], "not in the image"));
                }
            }
        }
    }
    (full, faithful)
}

fn cross_check(
    f: &Functor,
    source_flag: impl Fn(MorphismId) -> bool,
    target_flag: impl Fn(MorphismId) -> bool,
    reflect: bool,
    reason: &str,
) -> Property {
    let c = f.source().cat();
    for m in f.source().core_morphisms() {
        let (s, t) = (source_flag(m), target_flag(mapped(f, m)));
        let bad = if reflect { t && !s } else { s && !t };
        if bad {
            return Property::fail(Witness::new(c, &[m], reason));
        }
    }
    Property::ok()
}

pub fn preserves_pullbacks(f: &Functor) -> Result<Property> {
    let (ct, xt) = (f.source(), f.target());
    let c = ct.cat();
    for &z in ct.core() {
        let legs: Vec<MorphismId> = ct.core().iter().flat_map(|&a| c.hom(a, z).to_vec()).collect();
        for (i, &p) in legs.iter().enumerate() {
            for &q in &legs[i..] {
                let Some(pb) = ct.pullback(p, q)? else {
                    continue;
                };
                let image = (f.obj(pb.apex), f.mor(pb.proj1), f.mor(pb.proj2));
                let ok = match image {
                    (Some(apex), Some(proj1), Some(proj2)) => is_pullback(
                        xt.cat(),
                        mapped(f, p),
                        mapped(f, q),
                        &PullbackResult { apex, proj1, proj2 },
                    )?,
                    _ => false,
                };
                if !ok {
                    return Ok(Property::fail(Witness::new(c, &[p, q], "image of the pullback square is not a pullback")));
                }
            }
        }
    }
    Ok(Property::ok())
}

pub fn preserves_terminal(f: &Functor) -> Option<Property> {
    let c = f.source().cat();
    let t = terminal(c)?;
    let x = f.target().cat();
    let ft = f.obj(t)?;
    let holds = x.objects().all(|y| x.hom_size(y, ft) == 1);
    Some(if holds {
        Property::ok()
    } else {
        Property::fail(Witness::new(c, &[c.identity(t)], "image of the terminal object is not terminal"))
    })
}

pub fn functor_properties(f: &Functor) -> Result<PropertyReport> {
    let (ct, xt) = (f.source(), f.target());
    let (full, faithful) = full_and_faithful(f);
    Ok(PropertyReport {
        functor: f.name().to_string(),
        faithful,
        full,
        preserves_monos: cross_check(f, |m| ct.is_mono(m), |m| xt.is_mono(m), false, "mono sent to a non-mono"),
        reflects_monos: cross_check(f, |m| ct.is_mono(m), |m| xt.is_mono(m), true, "non-mono sent to a mono"),
        preserves_epis: cross_check(f, |m| ct.is_epi(m), |m| xt.is_epi(m), false, "epi sent to a non-epi"),
        reflects_epis: cross_check(f, |m| ct.is_epi(m), |m| xt.is_epi(m), true, "non-epi sent to an epi"),
        preserves_pullbacks: preserves_pullbacks(f)?,
        preserves_terminal: preserves_terminal(f),
    })
}

/// Full, faithful, and every target core object is isomorphic to an image of
/// a source core object.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub functor: String,
    pub full: Property,
    pub faithful: Property,
    pub essentially_surjective: Property,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.full.holds && self.faithful.holds && self.essentially_surjective.holds
    }
}

pub fn is_equivalence(f: &Functor) -> EquivalenceReport {
    let (full, faithful) = full_and_faithful(f);
    let x = f.target().cat();
    let images: Vec<_> = f.source().core().iter().filter_map(|&a| f.obj(a)).collect();
    let missed = f
        .target()
        .core()
        .iter()
        .copied()
        .find(|&y| !images.iter().any(|&fa| fa == y || find_iso(x, fa, y).is_some()));
    let essentially_surjective = match missed {
        None => Property::ok(),
        Some(y) => Property::fail(Witness::new(x, &[x.identity(y)], "object not isomorphic to any image")),
    };
    EquivalenceReport {
        functor: f.name().to_string(),
        full,
        faithful,
        essentially_surjective,
    }
}

/// A functor back along an equivalence. Each target core object goes to the
/// first source core object whose image is isomorphic to it (the first such
/// iso in hom order); morphisms are conjugated by the chosen isos and lifted.
pub fn quasi_inverse(f: &Functor) -> Result<Functor> {
    let (src, tgt) = (f.source(), f.target());
    let (c, x) = (src.cat(), tgt.cat());
    let invalid = |reason: String| Error::InvalidFunctor {
        functor: f.name().to_string(),
        reason,
    };
    let mut choice: HashMap<ObjectId, (ObjectId, MorphismId, MorphismId)> = HashMap::new();
    for &b in tgt.core() {
        let found = src.core().iter().find_map(|&a| {
            let fa = f.obj(a)?;
            let phi = if fa == b { x.identity(b) } else { find_iso(x, fa, b)? };
            Some((a, phi, inverse(x, phi)?))
        });
        let v = found.ok_or_else(|| invalid(format!("{} is not in the essential image", x.object_label(b))))?;
        choice.insert(b, v);
    }
    let mut objects = HashMap::new();
    let mut morphisms = HashMap::new();
    for &b in tgt.core() {
        let (a, phi, _) = choice[&b];
        objects.insert(b, a);
        for &b2 in tgt.core() {
            let (a2, _, back) = choice[&b2];
            for &g in x.hom(b, b2).iter() {
                let want = x.compose(back, x.compose(g, phi));
                let hom = c.hom(a, a2);
                let mut lifts = hom.iter().copied().filter(|&h| f.mor(h) == Some(want));
                let (Some(h), None) = (lifts.next(), lifts.next()) else {
                    return Err(invalid(format!("{} has no unique lift", x.morphism_label(g))));
                };
                morphisms.insert(g, h);
            }
        }
    }
    Ok(Functor::from_tables(
        format!("{}^-1", f.name()),
        tgt.clone(),
        src.clone(),
        objects,
        morphisms,
    ))
}
