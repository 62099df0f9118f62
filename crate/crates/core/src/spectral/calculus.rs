use serde::Serialize;

use super::class::MorphismClass;
use crate::error::Result;
use crate::kernel::MorphismId;
use crate::report::Witness;

#[derive(Clone, Debug, Serialize)]
pub struct CalculusVerdict {
    pub class: String,
    pub tier: String,
    pub holds: bool,
    /// Membership was decided with some pullbacks missing.
    pub bounded: bool,
    /// First failing axiom: identities, composition, ore or cancellation.
    pub axiom: Option<&'static str>,
    pub witness: Option<Witness>,
}

/// A square `f t = s g` with `t` in the class, for `f: B -> A` and `s` in the
/// class. The pullback is tried first, then every member landing in `B`.
pub fn ore_square(class: &MorphismClass, f: MorphismId, s: MorphismId) -> Result<Option<(MorphismId, MorphismId)>> {
    let tier = class.tier();
    if let Some(pb) = tier.pullback(f, s)? {
        if class.contains(pb.proj1)? {
            return Ok(Some((pb.proj1, pb.proj2)));
        }
    }
    ore_square_exhaustive(class, f, s)
}

/// The first square in id order, ignoring pullbacks.
pub fn ore_square_exhaustive(
    class: &MorphismClass,
    f: MorphismId,
    s: MorphismId,
) -> Result<Option<(MorphismId, MorphismId)>> {
    let c = class.tier().cat();
    for &t in class.landing_in(c.dom(f))?.iter() {
        let ft = c.compose(f, t);
        if let Some(&g) = c.hom(c.dom(t), c.dom(s)).iter().find(|&&g| c.compose(s, g) == ft) {
            return Ok(Some((t, g)));
        }
    }
    Ok(None)
}

/// Identities, closure under composition, the Ore condition and cancellation,
/// quantified over members with codomain in the core.
pub fn check_right_fraction_calculus(class: &MorphismClass) -> Result<CalculusVerdict> {
    let tier = class.tier();
    let c = tier.cat();
    let fail = |axiom, ms: &[MorphismId], reason: &str| CalculusVerdict {
        class: class.name().to_string(),
        tier: tier.name().to_string(),
        holds: false,
        bounded: false,
        axiom: Some(axiom),
        witness: Some(Witness::new(c, ms, reason)),
    };
    for &a in tier.core() {
        let id = c.identity(a);
        if !class.contains(id)? {
            return Ok(fail("identities", &[id], "identity outside the class"));
        }
    }
    for &a in tier.core() {
        for &s in class.landing_in(a)?.iter() {
            for &t in class.landing_in(c.dom(s))?.iter() {
                if !class.contains(c.compose(s, t))? {
                    return Ok(fail("composition", &[t, s], "composite outside the class"));
                }
            }
        }
    }
    for &a in tier.core() {
        let members = class.landing_in(a)?;
        for &b in tier.core() {
            for &f in c.hom(b, a).iter() {
                for &s in members.iter() {
                    if ore_square(class, f, s)?.is_none() {
                        return Ok(fail("ore", &[f, s], "cospan has no square with a class leg"));
                    }
                }
            }
        }
    }
    for &a in tier.core() {
        for &s in class.landing_in(a)?.iter() {
            for &x in tier.core() {
                let hom = c.hom(x, c.dom(s));
                for (i, &f) in hom.iter().enumerate() {
                    for &g in &hom[i + 1..] {
                        if c.compose(s, f) != c.compose(s, g) {
                            continue;
                        }
                        let equalized = class
                            .landing_in(x)?
                            .iter()
                            .any(|&t| c.compose(f, t) == c.compose(g, t));
                        if !equalized {
                            return Ok(fail("cancellation", &[f, g, s], "no class member equalizes the pair"));
                        }
                    }
                }
            }
        }
    }
    Ok(CalculusVerdict {
        class: class.name().to_string(),
        tier: tier.name().to_string(),
        holds: true,
        bounded: class.bounded(),
        axiom: None,
        witness: None,
    })
}
