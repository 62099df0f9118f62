//! Essential and pullback-stable essential monomorphisms, the class they
//! form, and the three conditions on a tier together with their duals.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{retraction, KernelError, MorphismId, Tier};
use crate::report::Witness;

fn known(tier: &Tier, m: MorphismId) -> Result<()> {
    if tier.cat().contains_morphism(m) {
        Ok(())
    } else {
        Err(KernelError::UnknownMorphism(m).into())
    }
}

/// `m` is mono and every `f` out of `cod(m)` with `f m` mono is itself mono.
/// `f` ranges over the whole ambient.
pub fn is_essential_mono(tier: &Tier, m: MorphismId) -> Result<bool> {
    known(tier, m)?;
    tier.memoize("essential", m, || {
        if !tier.is_mono(m) {
            return Ok(false);
        }
        let c = tier.cat();
        let b = c.cod(m);
        for y in c.objects() {
            for &f in c.hom(b, y).iter() {
                if !tier.is_mono(f) && tier.is_mono(c.compose(f, m)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

/// Dual notion: `e` is an essential mono of the opposite tier.
pub fn is_essential_epi(tier: &Arc<Tier>, e: MorphismId) -> Result<bool> {
    is_essential_mono(&tier.opposite(), e)
}

/// A verdict that may only cover the pullbacks that exist in the ambient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stable {
    pub holds: bool,
    /// Some pullback was missing, so `holds` was quantified over fewer squares.
    pub bounded: bool,
}

/// Every pullback of `m` along a morphism `u: X -> cod(m)` with `X` in the
/// core is an essential mono. `u = id` covers `m` itself.
///
/// A missing pullback of an all-core cospan in a pullback-closed tier is an
/// integrity error; other missing pullbacks make the verdict bounded.
pub fn is_pb_stable_essential_mono(tier: &Tier, m: MorphismId) -> Result<Stable> {
    known(tier, m)?;
    let c = tier.cat();
    let a = c.cod(m);
    if !tier.in_core(a) {
        return Err(Error::OutsideCore {
            tier: tier.name().to_string(),
            morphism: c.morphism_label(m),
        });
    }
    let mut bounded = false;
    let holds = tier.memoize("pb-stable", m, || {
        if !tier.is_mono(m) {
            return Ok(false);
        }
        for &x in tier.core() {
            for &u in c.hom(x, a).iter() {
                match tier.pullback(m, u)? {
                    Some(pb) => {
                        if !is_essential_mono(tier, pb.proj2)? {
                            return Ok(false);
                        }
                    }
                    None if tier.in_core(c.dom(m)) && tier.pullback_closed() => {
                        return Err(Error::from(KernelError::Integrity {
                            tier: tier.name().to_string(),
                            kind: "pullback",
                            witness: format!("{} / {}", c.morphism_label(m), c.morphism_label(u)),
                        }));
                    }
                    None => bounded = true,
                }
            }
        }
        Ok(true)
    })?;
    if holds {
        bounded = tier.memoize("pb-stable-bounded", m, || Ok::<_, Error>(bounded))?;
    }
    Ok(Stable {
        holds,
        bounded: holds && bounded,
    })
}

/// `Mono_E` and `St(Mono_E)` over the morphisms with codomain in the core.
#[derive(Clone, Debug, Serialize)]
pub struct MonoClassRegistry {
    pub tier: String,
    pub essential: Vec<MorphismId>,
    pub pb_stable_essential: Vec<MorphismId>,
    pub bounded: bool,
}

impl MonoClassRegistry {
    pub fn contains_stable(&self, m: MorphismId) -> bool {
        self.pb_stable_essential.binary_search(&m).is_ok()
    }

    pub fn contains_essential(&self, m: MorphismId) -> bool {
        self.essential.binary_search(&m).is_ok()
    }

    /// Violations of: stable ⊆ essential ⊆ monos, every core-codomain iso is
    /// stable, stable morphisms compose.
    pub fn invariant_violations(&self, tier: &Tier) -> Vec<String> {
        let c = tier.cat();
        let mut out = Vec::new();
        for &m in &self.pb_stable_essential {
            if !self.contains_essential(m) {
                out.push(format!("stable but not essential: {}", c.morphism_label(m)));
            }
        }
        for &m in &self.essential {
            if !tier.is_mono(m) {
                out.push(format!("essential but not mono: {}", c.morphism_label(m)));
            }
        }
        for m in tier.core_codomain_morphisms() {
            if tier.is_iso(m) && !self.contains_stable(m) {
                out.push(format!("iso missing from the stable class: {}", c.morphism_label(m)));
            }
        }
        let stable: HashSet<MorphismId> = self.pb_stable_essential.iter().copied().collect();
        for &s in &self.pb_stable_essential {
            for &t in &self.pb_stable_essential {
                if c.cod(s) == c.dom(t) && !stable.contains(&c.compose(t, s)) {
                    out.push(format!(
                        "stable class not closed: {} after {}",
                        c.morphism_label(t),
                        c.morphism_label(s)
                    ));
                }
            }
        }
        out
    }
}

pub fn st_mono_e(tier: &Tier) -> Result<MonoClassRegistry> {
    let mut essential = Vec::new();
    let mut stable = Vec::new();
    let mut bounded = false;
    for m in tier.core_codomain_morphisms() {
        if !tier.is_mono(m) {
            continue;
        }
        if is_essential_mono(tier, m)? {
            essential.push(m);
            let v = is_pb_stable_essential_mono(tier, m)?;
            if v.holds {
                stable.push(m);
                bounded |= v.bounded;
            }
        }
    }
    Ok(MonoClassRegistry {
        tier: tier.name().to_string(),
        essential,
        pb_stable_essential: stable,
        bounded,
    })
}

/// First essential mono with codomain in the core that is not an iso.
pub fn essential_non_iso(tier: &Tier) -> Result<Option<MorphismId>> {
    for m in tier.core_codomain_morphisms() {
        if tier.is_mono(m) && !tier.is_iso(m) && is_essential_mono(tier, m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionTag {
    /// Every pullback-stable essential mono is an iso.
    PbseIso,
    /// Every mono is split.
    MonoSplit,
    /// Every bimorphism is an iso.
    Balanced,
    CoPbseIso,
    CoMonoSplit,
    CoBalanced,
}

impl ConditionTag {
    pub const ALL: [ConditionTag; 6] = [
        ConditionTag::PbseIso,
        ConditionTag::MonoSplit,
        ConditionTag::Balanced,
        ConditionTag::CoPbseIso,
        ConditionTag::CoMonoSplit,
        ConditionTag::CoBalanced,
    ];

    pub fn dual(self) -> ConditionTag {
        use ConditionTag::*;
        match self {
            PbseIso => CoPbseIso,
            MonoSplit => CoMonoSplit,
            Balanced => CoBalanced,
            CoPbseIso => PbseIso,
            CoMonoSplit => MonoSplit,
            CoBalanced => Balanced,
        }
    }

    pub fn is_dual(self) -> bool {
        matches!(
            self,
            ConditionTag::CoPbseIso | ConditionTag::CoMonoSplit | ConditionTag::CoBalanced
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionTag::PbseIso => "pbse-iso",
            ConditionTag::MonoSplit => "mono-split",
            ConditionTag::Balanced => "balanced",
            ConditionTag::CoPbseIso => "co-pbse-iso",
            ConditionTag::CoMonoSplit => "co-mono-split",
            ConditionTag::CoBalanced => "co-balanced",
        }
    }
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConditionTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConditionTag> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        let norm = match norm.as_str() {
            "epi-split" => "co-mono-split",
            other => other,
        };
        ConditionTag::ALL
            .into_iter()
            .find(|t| t.as_str() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown condition {s}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub condition: ConditionTag,
    pub tier: String,
    pub holds: bool,
    pub bounded: bool,
    /// Smallest violating morphism id; present iff the condition fails.
    pub witness: Option<Witness>,
}

/// Evaluates a condition over the core; dual tags run on the opposite tier.
pub fn check_condition(tier: &Arc<Tier>, tag: ConditionTag) -> Result<ConditionVerdict> {
    let (t, base) = if tag.is_dual() {
        (tier.opposite(), tag.dual())
    } else {
        (tier.clone(), tag)
    };
    let c = t.cat();
    let mut bounded = false;
    let mut witness = None;
    match base {
        ConditionTag::PbseIso => {
            bounded = !t.pullback_closed();
            for m in t.core_codomain_morphisms() {
                if !t.is_mono(m) || t.is_iso(m) {
                    continue;
                }
                let v = is_pb_stable_essential_mono(&t, m)?;
                bounded |= v.bounded;
                if v.holds {
                    witness = Some(Witness::new(c, &[m], "pullback-stable essential mono, not iso"));
                    break;
                }
            }
        }
        ConditionTag::MonoSplit => {
            for m in t.core_morphisms() {
                if t.is_mono(m) && retraction(c, m).is_none() {
                    witness = Some(Witness::new(c, &[m], "mono without retraction"));
                    break;
                }
            }
        }
        ConditionTag::Balanced => {
            for m in t.core_morphisms() {
                if t.is_mono(m) && t.is_epi(m) && !t.is_iso(m) {
                    witness = Some(Witness::new(c, &[m], "bimorphism, not iso"));
                    break;
                }
            }
        }
        _ => unreachable!("dual tags are rewritten above"),
    }
    Ok(ConditionVerdict {
        condition: tag,
        tier: tier.name().to_string(),
        holds: witness.is_none(),
        bounded: witness.is_none() && bounded,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Category, ConcreteCategory, ObjectId};

    fn finset(n: u32, max: usize) -> (Arc<ConcreteCategory>, Arc<Tier>) {
        let c = Arc::new(ConcreteCategory::sets(max).unwrap());
        let core = (0..=n).map(ObjectId).collect();
        let t = Tier::new("finset", c.clone(), core).unwrap();
        (c, t)
    }

    #[test]
    fn empty_into_point_is_essential_but_not_stable() {
        let (c, t) = finset(2, 4);
        let m = c.morphism(ObjectId(0), ObjectId(1), &[]).unwrap();
        assert!(is_essential_mono(&t, m).unwrap());
        assert!(!is_pb_stable_essential_mono(&t, m).unwrap().holds);
    }

    #[test]
    fn point_into_two_is_not_essential() {
        let (c, t) = finset(2, 4);
        let m = c.morphism(ObjectId(1), ObjectId(2), &[0]).unwrap();
        assert!(!is_essential_mono(&t, m).unwrap());
    }

    #[test]
    fn outside_core_codomain_is_rejected() {
        let (c, t) = finset(1, 4);
        let m = c.identity(ObjectId(3));
        assert!(matches!(
            is_pb_stable_essential_mono(&t, m),
            Err(Error::OutsideCore { .. })
        ));
    }

    #[test]
    fn finset_mono_split_fails_at_empty_into_point() {
        let (c, t) = finset(2, 4);
        let v = check_condition(&t, ConditionTag::MonoSplit).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.morphisms, vec![c.morphism(ObjectId(0), ObjectId(1), &[]).unwrap()]);
    }

    #[test]
    fn tags_round_trip_through_strings() {
        for t in ConditionTag::ALL {
            assert_eq!(t.as_str().parse::<ConditionTag>().unwrap(), t);
            assert_eq!(t.dual().dual(), t);
        }
        assert!("nonsense".parse::<ConditionTag>().is_err());
    }
}
