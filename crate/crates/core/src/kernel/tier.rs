use std::sync::{Arc, OnceLock, Weak};

use dashmap::DashMap;

use super::category::{Category, MorphismId, ObjectId};
use super::classify;
use super::limits::{self, PullbackResult, PushoutResult};
use super::opposite::opposite;
use super::KernelError;

/// An ambient finite category with a designated core.
///
/// Quantifiers of every check run over core objects; pullbacks and pushouts
/// of core data are looked up in the whole ambient. Closure of the core under
/// those (co)limits is computed on first use, never asserted. The tier also
/// memoizes mono/epi flags and pullbacks, which every higher-level check
/// reuses heavily.
pub struct Tier {
    name: String,
    ambient: Arc<dyn Category>,
    core: Vec<ObjectId>,
    in_core: Vec<bool>,
    /// `None` when closed, otherwise the first cospan without a pullback.
    pullback_gap: OnceLock<Option<(MorphismId, MorphismId)>>,
    opposite: OnceLock<Arc<Tier>>,
    origin: Option<Weak<Tier>>,
    mono: DashMap<MorphismId, bool>,
    epi: DashMap<MorphismId, bool>,
    pullbacks: DashMap<(MorphismId, MorphismId), Option<PullbackResult>>,
    memo: DashMap<(&'static str, MorphismId), bool>,
}

impl std::fmt::Debug for Tier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tier")
            .field("name", &self.name)
            .field("ambient", &self.ambient.name())
            .field("core", &self.core.len())
            .finish()
    }
}

impl Tier {
    pub fn new(
        name: impl Into<String>,
        ambient: Arc<dyn Category>,
        mut core: Vec<ObjectId>,
    ) -> Result<Arc<Tier>, KernelError> {
        core.sort();
        core.dedup();
        let mut in_core = vec![false; ambient.object_count()];
        for &o in &core {
            *in_core
                .get_mut(o.0 as usize)
                .ok_or(KernelError::UnknownObject(o))? = true;
        }
        Ok(Arc::new(Self::raw(name.into(), ambient, core, in_core, None)))
    }

    /// The tier whose core is the whole category.
    pub fn whole(ambient: Arc<dyn Category>) -> Arc<Tier> {
        let core: Vec<ObjectId> = ambient.objects().collect();
        let in_core = vec![true; core.len()];
        let name = ambient.name().to_string();
        Arc::new(Self::raw(name, ambient, core, in_core, None))
    }

    fn raw(
        name: String,
        ambient: Arc<dyn Category>,
        core: Vec<ObjectId>,
        in_core: Vec<bool>,
        origin: Option<Weak<Tier>>,
    ) -> Tier {
        Tier {
            name,
            ambient,
            core,
            in_core,
            pullback_gap: OnceLock::new(),
            opposite: OnceLock::new(),
            origin,
            mono: DashMap::new(),
            epi: DashMap::new(),
            pullbacks: DashMap::new(),
            memo: DashMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &Arc<dyn Category> {
        &self.ambient
    }

    pub fn cat(&self) -> &dyn Category {
        self.ambient.as_ref()
    }

    pub fn core(&self) -> &[ObjectId] {
        &self.core
    }

    pub fn in_core(&self, a: ObjectId) -> bool {
        self.in_core.get(a.0 as usize).copied().unwrap_or(false)
    }

    pub fn is_whole(&self) -> bool {
        self.core.len() == self.ambient.object_count()
    }

    /// Same core in `ambient^op`. Taking it twice returns the original tier
    /// (with its caches) while that is alive.
    pub fn opposite(self: &Arc<Self>) -> Arc<Tier> {
        if let Some(origin) = self.origin.as_ref().and_then(Weak::upgrade) {
            return origin;
        }
        self.opposite
            .get_or_init(|| {
                Arc::new(Self::raw(
                    format!("{}^op", self.name),
                    opposite(&self.ambient),
                    self.core.clone(),
                    self.in_core.clone(),
                    Some(Arc::downgrade(self)),
                ))
            })
            .clone()
    }

    /// Every morphism with both ends in the core, in (dom, cod, id) order.
    pub fn core_morphisms(&self) -> Vec<MorphismId> {
        let c = self.cat();
        let mut out = Vec::new();
        for &a in &self.core {
            for &b in &self.core {
                out.extend(c.hom(a, b).iter().copied());
            }
        }
        out.sort();
        out
    }

    /// Every morphism whose codomain is a core object (domain anywhere).
    pub fn core_codomain_morphisms(&self) -> Vec<MorphismId> {
        let c = self.cat();
        let mut out = Vec::new();
        for a in c.objects() {
            for &b in &self.core {
                out.extend(c.hom(a, b).iter().copied());
            }
        }
        out.sort();
        out
    }

    pub fn is_mono(&self, f: MorphismId) -> bool {
        if let Some(v) = self.mono.get(&f) {
            return *v;
        }
        let v = classify::is_mono(self.cat(), f);
        self.mono.insert(f, v);
        v
    }

    pub fn is_epi(&self, f: MorphismId) -> bool {
        if let Some(v) = self.epi.get(&f) {
            return *v;
        }
        let v = classify::is_epi(self.cat(), f);
        self.epi.insert(f, v);
        v
    }

    /// Memoizes a per-morphism predicate under `tag`. Errors are not cached.
    pub fn memoize<E>(
        &self,
        tag: &'static str,
        f: MorphismId,
        compute: impl FnOnce() -> Result<bool, E>,
    ) -> Result<bool, E> {
        if let Some(v) = self.memo.get(&(tag, f)) {
            return Ok(*v);
        }
        let v = compute()?;
        self.memo.insert((tag, f), v);
        Ok(v)
    }

    pub fn is_iso(&self, f: MorphismId) -> bool {
        classify::is_iso(self.cat(), f)
    }

    pub fn pullback(
        &self,
        f: MorphismId,
        g: MorphismId,
    ) -> Result<Option<PullbackResult>, KernelError> {
        if let Some(v) = self.pullbacks.get(&(f, g)) {
            return Ok(*v);
        }
        let v = limits::pullback(self.cat(), f, g)?;
        self.pullbacks.insert((f, g), v);
        Ok(v)
    }

    /// Pushout in the ambient, through the opposite tier's pullback cache.
    pub fn pushout(
        self: &Arc<Self>,
        f: MorphismId,
        g: MorphismId,
    ) -> Result<Option<PushoutResult>, KernelError> {
        match self.opposite().pullback(f, g) {
            Err(KernelError::NotACospan(f, g)) => Err(KernelError::NotASpan(f, g)),
            other => Ok(other?.map(|r| PushoutResult {
                apex: r.apex,
                inj1: r.proj1,
                inj2: r.proj2,
            })),
        }
    }

    /// First cospan of core objects without a pullback in the ambient.
    pub fn pullback_gap(&self) -> Option<(MorphismId, MorphismId)> {
        *self.pullback_gap.get_or_init(|| {
            let c = self.cat();
            for &z in &self.core {
                let legs: Vec<MorphismId> = self
                    .core
                    .iter()
                    .flat_map(|&a| c.hom(a, z).to_vec())
                    .collect();
                for (i, &f) in legs.iter().enumerate() {
                    for &g in &legs[i..] {
                        if self.pullback(f, g).expect("legs share a codomain").is_none() {
                            return Some((f, g));
                        }
                    }
                }
            }
            None
        })
    }

    pub fn pullback_closed(&self) -> bool {
        self.pullback_gap().is_none()
    }

    pub fn pushout_gap(self: &Arc<Self>) -> Option<(MorphismId, MorphismId)> {
        self.opposite().pullback_gap()
    }

    pub fn pushout_closed(self: &Arc<Self>) -> bool {
        self.pushout_gap().is_none()
    }

    /// Runs the closure checks a builder claims; fails with the offending cospan or span.
    pub fn require_closure(
        self: &Arc<Self>,
        pullbacks: bool,
        pushouts: bool,
    ) -> Result<(), KernelError> {
        if pullbacks {
            if let Some((f, g)) = self.pullback_gap() {
                return Err(KernelError::ClosureClaim {
                    tier: self.name.clone(),
                    kind: "pullback",
                    witness: format!(
                        "{} / {}",
                        self.cat().morphism_label(f),
                        self.cat().morphism_label(g)
                    ),
                });
            }
        }
        if pushouts {
            if let Some((f, g)) = self.pushout_gap() {
                return Err(KernelError::ClosureClaim {
                    tier: self.name.clone(),
                    kind: "pushout",
                    witness: format!(
                        "{} / {}",
                        self.cat().morphism_label(f),
                        self.cat().morphism_label(g)
                    ),
                });
            }
        }
        Ok(())
    }
}
