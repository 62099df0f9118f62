use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{Category, MorphismId, ObjectId, Tier};

type ObjectMap = Arc<dyn Fn(ObjectId) -> Option<ObjectId> + Send + Sync>;
type MorphismMap = Arc<dyn Fn(MorphismId) -> Option<MorphismId> + Send + Sync>;
type ComponentMap = Arc<dyn Fn(ObjectId) -> Option<MorphismId> + Send + Sync>;

/// Identity of the underlying category. Opposites are rebuilt per tier, so
/// equal names and sizes count as the same category.
pub fn same_ambient(a: &Arc<dyn Category>, b: &Arc<dyn Category>) -> bool {
    Arc::ptr_eq(a, b) || (a.name() == b.name() && a.object_count() == b.object_count())
}

/// A functor between the ambients of two tiers. The maps may be partial, but
/// must be defined on the source core; checks quantify over that core.
#[derive(Clone)]
pub struct Functor {
    name: String,
    source: Arc<Tier>,
    target: Arc<Tier>,
    objects: ObjectMap,
    morphisms: MorphismMap,
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functor({}: {} -> {})", self.name, self.source.name(), self.target.name())
    }
}

impl Functor {
    pub fn new(
        name: impl Into<String>,
        source: Arc<Tier>,
        target: Arc<Tier>,
        objects: impl Fn(ObjectId) -> Option<ObjectId> + Send + Sync + 'static,
        morphisms: impl Fn(MorphismId) -> Option<MorphismId> + Send + Sync + 'static,
    ) -> Functor {
        Functor {
            name: name.into(),
            source,
            target,
            objects: Arc::new(objects),
            morphisms: Arc::new(morphisms),
        }
    }

    pub fn from_tables(
        name: impl Into<String>,
        source: Arc<Tier>,
        target: Arc<Tier>,
        objects: HashMap<ObjectId, ObjectId>,
        morphisms: HashMap<MorphismId, MorphismId>,
    ) -> Functor {
        Functor::new(
            name,
            source,
            target,
            move |a| objects.get(&a).copied(),
            move |f| morphisms.get(&f).copied(),
        )
    }

    pub fn identity(tier: &Arc<Tier>) -> Functor {
        let c = tier.ambient().clone();
        Functor::new(
            format!("1_{}", tier.name()),
            tier.clone(),
            tier.clone(),
            {
                let c = c.clone();
                move |a| ((a.0 as usize) < c.object_count()).then_some(a)
            },
            move |f| c.contains_morphism(f).then_some(f),
        )
    }

    /// `g ∘ f`.
    pub fn compose(g: &Functor, f: &Functor) -> Result<Functor> {
        if !same_ambient(f.target.ambient(), g.source.ambient()) {
            return Err(Error::InvalidFunctor {
                functor: format!("{} . {}", g.name, f.name),
                reason: format!(
                    "target {} of {} is not the source {} of {}",
                    f.target.name(),
                    f.name,
                    g.source.name(),
                    g.name
                ),
            });
        }
        let (fo, fm, go, gm) = (
            f.objects.clone(),
            f.morphisms.clone(),
            g.objects.clone(),
            g.morphisms.clone(),
        );
        Ok(Functor {
            name: format!("{}{}", g.name, f.name),
            source: f.source.clone(),
            target: g.target.clone(),
            objects: Arc::new(move |a| fo(a).and_then(|b| go(b))),
            morphisms: Arc::new(move |m| fm(m).and_then(|n| gm(n))),
        })
    }

    /// The same maps between the opposite tiers.
    pub fn opposite(&self) -> Functor {
        Functor {
            name: format!("{}^op", self.name),
            source: self.source.opposite(),
            target: self.target.opposite(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// Same maps, with the source or target replaced by a tier over the same ambient.
    pub fn restrict(&self, source: Arc<Tier>, target: Arc<Tier>) -> Result<Functor> {
        let same = same_ambient(source.ambient(), self.source.ambient())
            && same_ambient(target.ambient(), self.target.ambient());
        if !same {
            return Err(Error::InvalidFunctor {
                functor: self.name.clone(),
                reason: "restriction must keep both ambient categories".into(),
            });
        }
        Ok(Functor {
            name: self.name.clone(),
            source,
            target,
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        })
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Functor {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<Tier> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Tier> {
        &self.target
    }

    pub fn obj(&self, a: ObjectId) -> Option<ObjectId> {
        (self.objects)(a)
    }

    pub fn mor(&self, f: MorphismId) -> Option<MorphismId> {
        (self.morphisms)(f)
    }

    /// Functor laws over the source core: typing, identities, composition.
    pub fn violations(&self) -> Vec<String> {
        let (c, x) = (self.source.cat(), self.target.cat());
        let mut out = Vec::new();
        let core = self.source.core();
        for &a in core {
            match self.obj(a) {
                None => out.push(format!("{} undefined on {}", self.name, c.object_label(a))),
                Some(fa) if (fa.0 as usize) >= x.object_count() => {
                    out.push(format!("{} sends {} outside the target", self.name, c.object_label(a)))
                }
                Some(fa) => {
                    if self.mor(c.identity(a)) != Some(x.identity(fa)) {
                        out.push(format!("{} does not preserve the identity of {}", self.name, c.object_label(a)));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mut typed = true;
        for &a in core {
            for &b in core {
                for &f in c.hom(a, b).iter() {
                    let ok = self.mor(f).is_some_and(|ff| {
                        x.contains_morphism(ff)
                            && Some(x.dom(ff)) == self.obj(a)
                            && Some(x.cod(ff)) == self.obj(b)
                    });
                    if !ok {
                        typed = false;
                        out.push(format!("{} is undefined or mistyped on {}", self.name, c.morphism_label(f)));
                    }
                }
            }
        }
        if !typed {
            return out;
        }
        for &a in core {
            for &b in core {
                for &f in c.hom(a, b).iter() {
                    let ff = self.mor(f).expect("typed above");
                    for &d in core {
                        for &g in c.hom(b, d).iter() {
                            let fg = self.mor(g).expect("typed above");
                            if self.mor(c.compose(g, f)) != Some(x.compose(fg, ff)) {
                                out.push(format!(
                                    "{} does not preserve {} after {}",
                                    self.name,
                                    c.morphism_label(g),
                                    c.morphism_label(f)
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// `α: S ⇒ T` for functors `S, T` between the same tiers.
#[derive(Clone)]
pub struct NaturalTransformation {
    name: String,
    source: Functor,
    target: Functor,
    components: ComponentMap,
}

impl fmt::Debug for NaturalTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NaturalTransformation({}: {} => {})", self.name, self.source.name, self.target.name)
    }
}

impl NaturalTransformation {
    pub fn new(
        name: impl Into<String>,
        source: Functor,
        target: Functor,
        components: impl Fn(ObjectId) -> Option<MorphismId> + Send + Sync + 'static,
    ) -> NaturalTransformation {
        NaturalTransformation {
            name: name.into(),
            source,
            target,
            components: Arc::new(components),
        }
    }

    pub fn identity(f: &Functor) -> NaturalTransformation {
        let x = f.target.ambient().clone();
        let obj = f.objects.clone();
        NaturalTransformation::new(format!("1_{}", f.name), f.clone(), f.clone(), move |a| {
            obj(a).map(|b| x.identity(b))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn component(&self, a: ObjectId) -> Option<MorphismId> {
        (self.components)(a)
    }

    /// Replaces one component; used to build deliberately broken data.
    pub fn with_component(&self, a: ObjectId, m: MorphismId) -> NaturalTransformation {
        let inner = self.components.clone();
        NaturalTransformation {
            name: format!("{}[{}]", self.name, a),
            source: self.source.clone(),
            target: self.target.clone(),
            components: Arc::new(move |b| if b == a { Some(m) } else { inner(b) }),
        }
    }

    /// Same components, read in the opposite categories: `T^op ⇒ S^op`.
    pub fn opposite(&self) -> NaturalTransformation {
        NaturalTransformation {
            name: format!("{}^op", self.name),
            source: self.target.opposite(),
            target: self.source.opposite(),
            components: self.components.clone(),
        }
    }

    /// Typing of components and naturality squares over the source core.
    pub fn violations(&self) -> Vec<String> {
        let c = self.source.source.cat();
        let x = self.source.target.cat();
        let mut out = Vec::new();
        let core = self.source.source.core();
        for &a in core {
            let ok = match (self.component(a), self.source.obj(a), self.target.obj(a)) {
                (Some(m), Some(s), Some(t)) => x.contains_morphism(m) && x.dom(m) == s && x.cod(m) == t,
                _ => false,
            };
            if !ok {
                out.push(format!("{}: component at {} missing or mistyped", self.name, c.object_label(a)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for &a in core {
            for &b in core {
                for &f in c.hom(a, b).iter() {
                    let (Some(sf), Some(tf)) = (self.source.mor(f), self.target.mor(f)) else {
                        out.push(format!("{}: functors undefined on {}", self.name, c.morphism_label(f)));
                        continue;
                    };
                    let alpha_a = self.component(a).expect("checked above");
                    let alpha_b = self.component(b).expect("checked above");
                    if x.compose(tf, alpha_a) != x.compose(alpha_b, sf) {
                        out.push(format!(
                            "{}: naturality square of {} does not commute",
                            self.name,
                            c.morphism_label(f)
                        ));
                    }
                }
            }
        }
        out
    }
}
