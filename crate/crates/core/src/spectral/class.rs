use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use dashmap::DashMap;

use crate::error::Result;
use crate::essentials::is_pb_stable_essential_mono;
use crate::kernel::{MorphismId, ObjectId, Tier};

type Test = Arc<dyn Fn(&Tier, MorphismId) -> Result<bool> + Send + Sync>;

/// A class of morphisms whose codomain lies in the core of a tier.
#[derive(Clone)]
pub struct MorphismClass {
    name: String,
    tier: Arc<Tier>,
    test: Test,
    landing: Arc<DashMap<ObjectId, Arc<[MorphismId]>>>,
    bounded: Arc<AtomicBool>,
}

impl fmt::Debug for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MorphismClass({} in {})", self.name, self.tier.name())
    }
}

impl MorphismClass {
    pub fn custom(
        name: impl Into<String>,
        tier: &Arc<Tier>,
        test: impl Fn(&Tier, MorphismId) -> Result<bool> + Send + Sync + 'static,
    ) -> MorphismClass {
        MorphismClass {
            name: name.into(),
            tier: tier.clone(),
            test: Arc::new(test),
            landing: Arc::new(DashMap::new()),
            bounded: Arc::new(AtomicBool::new(false)),
        }
    }

    /// Pullback-stable essential monos.
    pub fn stable(tier: &Arc<Tier>) -> MorphismClass {
        let mut class = MorphismClass::custom("St(Mono_E)", tier, |_, _| Ok(false));
        let bounded = class.bounded.clone();
        class.test = Arc::new(move |t, m| {
            if !t.is_mono(m) {
                return Ok(false);
            }
            let v = is_pb_stable_essential_mono(t, m)?;
            if v.bounded {
                bounded.store(true, Ordering::Relaxed);
            }
            Ok(v.holds)
        });
        class
    }

    pub fn isos(tier: &Arc<Tier>) -> MorphismClass {
        MorphismClass::custom("isos", tier, |t, m| Ok(t.is_iso(m)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tier(&self) -> &Arc<Tier> {
        &self.tier
    }

    /// Some membership verdict only covered the pullbacks present in the ambient.
    pub fn bounded(&self) -> bool {
        self.bounded.load(Ordering::Relaxed)
    }

    /// Morphisms with codomain outside the core are never members.
    pub fn contains(&self, m: MorphismId) -> Result<bool> {
        if !self.tier.in_core(self.tier.cat().cod(m)) {
            return Ok(false);
        }
        (self.test)(&self.tier, m)
    }

    /// Members with codomain `a`, from any ambient object, in id order.
    pub fn landing_in(&self, a: ObjectId) -> Result<Arc<[MorphismId]>> {
        if let Some(v) = self.landing.get(&a) {
            return Ok(v.clone());
        }
        let c = self.tier.cat();
        let mut out = Vec::new();
        if self.tier.in_core(a) {
            for x in c.objects() {
                for &m in c.hom(x, a).iter() {
                    if (self.test)(&self.tier, m)? {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        let v: Arc<[MorphismId]> = out.into();
        self.landing.insert(a, v.clone());
        Ok(v)
    }
}
