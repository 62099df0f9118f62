//! Pullbacks, pushouts, terminal and initial objects by exhaustive search of
//! the universal property.
//!
//! A commuting square `(P, p1, p2)` over a cospan `A -f-> Z <-g- B` is a
//! pullback iff for every probe object `Q` the map
//! `Hom(Q, P) -> Cones(Q)`, `h |-> (p1 h, p2 h)` is a bijection. Cone counts
//! per probe are computed once per cospan; a candidate apex must match every
//! count before any projection pair is tried.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::category::{Category, MorphismId, ObjectId};
use super::opposite::opposite;
use super::KernelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PullbackResult {
    pub apex: ObjectId,
    /// Projection onto the domain of the first cospan leg.
    pub proj1: MorphismId,
    pub proj2: MorphismId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PushoutResult {
    pub apex: ObjectId,
    /// Injection out of the codomain of the first span leg.
    pub inj1: MorphismId,
    pub inj2: MorphismId,
}

/// Pair counts above which single projections are pre-screened by their fibres.
const PRUNE_THRESHOLD: usize = 4096;

struct ProbeData {
    q: ObjectId,
    cones: usize,
    /// For each `a: Q -> A`, how many `b: Q -> B` complete it to a cone.
    over_a: HashMap<MorphismId, usize>,
    over_b: HashMap<MorphismId, usize>,
}

struct Cospan<'c> {
    c: &'c dyn Category,
    f: MorphismId,
    g: MorphismId,
    probes: Vec<ProbeData>,
}

impl<'c> Cospan<'c> {
    fn new(c: &'c dyn Category, f: MorphismId, g: MorphismId) -> Result<Self, KernelError> {
        for m in [f, g] {
            if !c.contains_morphism(m) {
                return Err(KernelError::UnknownMorphism(m));
            }
        }
        if c.cod(f) != c.cod(g) {
            return Err(KernelError::NotACospan(f, g));
        }
        let (a, b) = (c.dom(f), c.dom(g));
        let probe_objects = c.cone_probes().unwrap_or_else(|| c.objects().collect());
        let probes = probe_objects
            .into_iter()
            .map(|q| {
                let ha = c.hom(q, a);
                let hb = c.hom(q, b);
                let mut by_z_a: HashMap<MorphismId, usize> = HashMap::new();
                for &x in ha.iter() {
                    *by_z_a.entry(c.compose(f, x)).or_default() += 1;
                }
                let mut by_z_b: HashMap<MorphismId, usize> = HashMap::new();
                for &y in hb.iter() {
                    *by_z_b.entry(c.compose(g, y)).or_default() += 1;
                }
                let over_a: HashMap<MorphismId, usize> = ha
                    .iter()
                    .map(|&x| (x, by_z_b.get(&c.compose(f, x)).copied().unwrap_or(0)))
                    .collect();
                let over_b: HashMap<MorphismId, usize> = hb
                    .iter()
                    .map(|&y| (y, by_z_a.get(&c.compose(g, y)).copied().unwrap_or(0)))
                    .collect();
                let cones = over_a.values().sum();
                ProbeData {
                    q,
                    cones,
                    over_a,
                    over_b,
                }
            })
            .collect();
        Ok(Cospan { c, f, g, probes })
    }

    fn counts_match(&self, p: ObjectId) -> bool {
        self.probes.iter().all(|d| self.c.hom_size(d.q, p) == d.cones)
    }

    /// Necessary condition on one projection: its fibres over each `x: Q -> A`
    /// have exactly as many elements as cones over `x`.
    fn fibres_ok(&self, p: ObjectId, proj: MorphismId, first: bool) -> bool {
        self.probes.iter().all(|d| {
            let expected = if first { &d.over_a } else { &d.over_b };
            let mut seen: HashMap<MorphismId, usize> = HashMap::new();
            for &h in self.c.hom(d.q, p).iter() {
                *seen.entry(self.c.compose(proj, h)).or_default() += 1;
            }
            expected
                .iter()
                .all(|(x, &n)| seen.get(x).copied().unwrap_or(0) == n)
        })
    }

    fn universal(&self, p: ObjectId, p1: MorphismId, p2: MorphismId) -> bool {
        self.probes.iter().all(|d| {
            let hom = self.c.hom(d.q, p);
            if hom.len() != d.cones {
                return false;
            }
            let mut seen = HashSet::with_capacity(hom.len());
            hom.iter()
                .all(|&h| seen.insert((self.c.compose(p1, h), self.c.compose(p2, h))))
        })
    }

    fn search(&self, all: bool) -> Vec<PullbackResult> {
        let c = self.c;
        let (a, b) = (c.dom(self.f), c.dom(self.g));
        let mut found = Vec::new();
        for p in c.objects() {
            if !self.counts_match(p) {
                continue;
            }
            let ha = c.hom(p, a);
            let hb = c.hom(p, b);
            let prune = ha.len() * hb.len() > PRUNE_THRESHOLD;
            let mut by_z: HashMap<MorphismId, Vec<MorphismId>> = HashMap::new();
            for &p2 in hb.iter() {
                if !prune || self.fibres_ok(p, p2, false) {
                    by_z.entry(c.compose(self.g, p2)).or_default().push(p2);
                }
            }
            for &p1 in ha.iter() {
                let Some(partners) = by_z.get(&c.compose(self.f, p1)) else {
                    continue;
                };
                if prune && !self.fibres_ok(p, p1, true) {
                    continue;
                }
                for &p2 in partners {
                    if self.universal(p, p1, p2) {
                        found.push(PullbackResult {
                            apex: p,
                            proj1: p1,
                            proj2: p2,
                        });
                        if !all {
                            return found;
                        }
                    }
                }
            }
        }
        found
    }
}

/// Pullback of `f: A -> Z` and `g: B -> Z`; the apex with the smallest id wins,
/// then the first projection pair in hom order.
pub fn pullback(
    c: &dyn Category,
    f: MorphismId,
    g: MorphismId,
) -> Result<Option<PullbackResult>, KernelError> {
    Ok(Cospan::new(c, f, g)?.search(false).into_iter().next())
}

/// Every pullback cone of the cospan (all apexes, all projection pairs).
pub fn all_pullbacks(
    c: &dyn Category,
    f: MorphismId,
    g: MorphismId,
) -> Result<Vec<PullbackResult>, KernelError> {
    Ok(Cospan::new(c, f, g)?.search(true))
}

/// Whether the given commuting square is a pullback of `f` and `g`.
pub fn is_pullback(
    c: &dyn Category,
    f: MorphismId,
    g: MorphismId,
    cone: &PullbackResult,
) -> Result<bool, KernelError> {
    let cospan = Cospan::new(c, f, g)?;
    let (p, p1, p2) = (cone.apex, cone.proj1, cone.proj2);
    if c.dom(p1) != p || c.dom(p2) != p || c.cod(p1) != c.dom(f) || c.cod(p2) != c.dom(g) {
        return Ok(false);
    }
    if c.compose(f, p1) != c.compose(g, p2) {
        return Ok(false);
    }
    Ok(cospan.universal(p, p1, p2))
}

/// Pushout of the span `f: Z -> A`, `g: Z -> B`, computed as a pullback in `C^op`.
pub fn pushout(
    c: &Arc<dyn Category>,
    f: MorphismId,
    g: MorphismId,
) -> Result<Option<PushoutResult>, KernelError> {
    let op = opposite(c);
    match pullback(op.as_ref(), f, g) {
        Err(KernelError::NotACospan(f, g)) => Err(KernelError::NotASpan(f, g)),
        other => Ok(other?.map(to_pushout)),
    }
}

pub fn all_pushouts(
    c: &Arc<dyn Category>,
    f: MorphismId,
    g: MorphismId,
) -> Result<Vec<PushoutResult>, KernelError> {
    let op = opposite(c);
    Ok(all_pullbacks(op.as_ref(), f, g)?
        .into_iter()
        .map(to_pushout)
        .collect())
}

fn to_pushout(r: PullbackResult) -> PushoutResult {
    PushoutResult {
        apex: r.apex,
        inj1: r.proj1,
        inj2: r.proj2,
    }
}

/// Smallest object receiving exactly one morphism from every object.
pub fn terminal(c: &dyn Category) -> Option<ObjectId> {
    c.objects()
        .find(|&t| c.objects().all(|x| c.hom_size(x, t) == 1))
}

pub fn initial(c: &dyn Category) -> Option<ObjectId> {
    c.objects()
        .find(|&i| c.objects().all(|x| c.hom_size(i, x) == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::concrete::ConcreteCategory;

    #[test]
    fn pullback_of_identities_is_the_object() {
        let c = ConcreteCategory::sets(3).unwrap();
        let id = c.identity(ObjectId(2));
        let r = pullback(&c, id, id).unwrap().unwrap();
        assert_eq!(r.apex, ObjectId(2));
        // Any automorphism pair (u, u) is a valid answer; hom order picks the swap.
        assert_eq!(r.proj1, r.proj2);
        assert!(crate::kernel::is_iso(&c, r.proj1));
    }

    #[test]
    fn product_of_two_points_escapes_a_three_element_ambient() {
        let c = ConcreteCategory::sets(3).unwrap();
        let bang = c.morphism(ObjectId(2), ObjectId(1), &[0, 0]).unwrap();
        assert_eq!(pullback(&c, bang, bang).unwrap(), None);
        let c4 = ConcreteCategory::sets(4).unwrap();
        let bang4 = c4.morphism(ObjectId(2), ObjectId(1), &[0, 0]).unwrap();
        assert_eq!(pullback(&c4, bang4, bang4).unwrap().unwrap().apex, ObjectId(4));
    }

    #[test]
    fn non_cospan_is_rejected() {
        let c = ConcreteCategory::sets(3).unwrap();
        let f = c.morphism(ObjectId(1), ObjectId(2), &[0]).unwrap();
        let g = c.morphism(ObjectId(1), ObjectId(3), &[0]).unwrap();
        assert!(matches!(pullback(&c, f, g), Err(KernelError::NotACospan(..))));
    }

    #[test]
    fn terminal_and_initial_of_finset() {
        let c = ConcreteCategory::sets(4).unwrap();
        assert_eq!(terminal(&c), Some(ObjectId(1)));
        assert_eq!(initial(&c), Some(ObjectId(0)));
    }

    #[test]
    fn pushout_of_identity_is_the_object() {
        let c: Arc<dyn Category> = Arc::new(ConcreteCategory::sets(4).unwrap());
        let id = c.identity(ObjectId(3));
        let r = pushout(&c, id, id).unwrap().unwrap();
        assert_eq!(r.apex, ObjectId(3));
    }
}
