use std::collections::HashMap;
use std::env;
use std::sync::Arc;

use serde::Serialize;

use super::calculus::check_right_fraction_calculus;
use super::class::MorphismClass;
use crate::error::{Error, Result};
use crate::functors::{same_ambient, Functor};
use crate::kernel::{inverse, Category, FinCategory, MorphismId, ObjectId, Tier};

/// Raw spans allowed per hom-set unless `FINKAT_SPAN_CAP` says otherwise.
pub const DEFAULT_SPAN_CAP: usize = 1_000_000;

pub fn span_cap_from_env() -> usize {
    env::var("FINKAT_SPAN_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SPAN_CAP)
}

/// `A <-s- D -f-> B` with `s` in the class: the fraction `f s^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpanFraction {
    pub s: MorphismId,
    pub f: MorphismId,
}

impl SpanFraction {
    pub fn new(c: &dyn Category, s: MorphismId, f: MorphismId) -> Result<SpanFraction> {
        if c.dom(s) != c.dom(f) {
            return Err(Error::Invalid(format!(
                "span legs {} and {} have different domains",
                c.morphism_label(s),
                c.morphism_label(f)
            )));
        }
        Ok(SpanFraction { s, f })
    }

    pub fn source(&self, c: &dyn Category) -> ObjectId {
        c.cod(self.s)
    }

    pub fn target(&self, c: &dyn Category) -> ObjectId {
        c.cod(self.f)
    }

    pub fn label(&self, c: &dyn Category) -> String {
        format!("[{} | {}]", c.morphism_label(self.s), c.morphism_label(self.f))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn spans_between(class: &MorphismClass, a: ObjectId, b: ObjectId, cap: usize) -> Result<Vec<SpanFraction>> {
    let c = class.tier().cat();
    let legs = class.landing_in(a)?;
    let total: usize = legs.iter().map(|&s| c.hom_size(c.dom(s), b)).sum();
    if total > cap {
        return Err(Error::SpanCap {
            pair: format!("{} -> {}", c.object_label(a), c.object_label(b)),
            spans: total,
            cap,
        });
    }
    let mut out = Vec::with_capacity(total);
    for &s in legs.iter() {
        out.extend(c.hom(c.dom(s), b).iter().map(|&f| SpanFraction { s, f }));
    }
    Ok(out)
}

/// Equivalence classes of the given spans (all with the same endpoints) under
/// the closure of: `(s, f) ~ (s', f')` when `s u = s' v` lies in the class and
/// `f u = f' v`. Classes are ordered by their first span.
fn partition(class: &MorphismClass, spans: &[SpanFraction]) -> Result<Vec<Vec<SpanFraction>>> {
    let c = class.tier().cat();
    let mut uf = UnionFind((0..spans.len()).collect());
    let mut seen: HashMap<(MorphismId, MorphismId), usize> = HashMap::new();
    if let Some(first) = spans.first() {
        let legs = class.landing_in(first.source(c))?;
        for (i, span) in spans.iter().enumerate() {
            let d = c.dom(span.s);
            for &t in legs.iter() {
                for &u in c.hom(c.dom(t), d).iter() {
                    if c.compose(span.s, u) != t {
                        continue;
                    }
                    match seen.entry((t, c.compose(span.f, u))) {
                        std::collections::hash_map::Entry::Occupied(e) => uf.union(*e.get(), i),
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(i);
                        }
                    }
                }
            }
        }
    }
    let mut groups: Vec<Vec<SpanFraction>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, &span) in spans.iter().enumerate() {
        let root = uf.find(i);
        let k = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[k].push(span);
    }
    Ok(groups)
}

/// Whether two spans with the same endpoints are identified in the category
/// of fractions.
pub fn span_equivalent(class: &MorphismClass, a: SpanFraction, b: SpanFraction) -> Result<bool> {
    let c = class.tier().cat();
    if a.source(c) != b.source(c) || a.target(c) != b.target(c) {
        return Err(Error::Invalid(format!(
            "spans {} and {} have different endpoints",
            a.label(c),
            b.label(c)
        )));
    }
    for span in [a, b] {
        if !class.contains(span.s)? {
            return Err(Error::Invalid(format!("{} has a leg outside {}", span.label(c), class.name())));
        }
    }
    let spans = spans_between(class, a.source(c), a.target(c), usize::MAX)?;
    Ok(partition(class, &spans)?
        .iter()
        .any(|g| g.contains(&a) && g.contains(&b)))
}

/// `(s', g) ∘ (s, f)`, through the pullback of `f` and `s'`, or the first
/// square in id order when that pullback is missing or its leg falls outside
/// the class.
pub fn compose_spans(class: &MorphismClass, second: SpanFraction, first: SpanFraction) -> Result<SpanFraction> {
    let tier = class.tier();
    let c = tier.cat();
    if let Some(pb) = tier.pullback(first.f, second.s)? {
        let s = c.compose(first.s, pb.proj1);
        if class.contains(s)? {
            return Ok(SpanFraction {
                s,
                f: c.compose(second.f, pb.proj2),
            });
        }
    }
    compose_spans_exhaustive(class, second, first)
}

/// Composite through the first Ore square in id order: the first class member
/// `s t` landing in the source for which `f t` factors through `s'`.
pub fn compose_spans_exhaustive(class: &MorphismClass, second: SpanFraction, first: SpanFraction) -> Result<SpanFraction> {
    let c = class.tier().cat();
    for &st in class.landing_in(first.source(c))?.iter() {
        let e = c.dom(st);
        for &t in c.hom(e, c.dom(first.s)).iter() {
            if c.compose(first.s, t) != st {
                continue;
            }
            let ft = c.compose(first.f, t);
            if let Some(&h) = c.hom(e, c.dom(second.s)).iter().find(|&&h| c.compose(second.s, h) == ft) {
                return Ok(SpanFraction {
                    s: st,
                    f: c.compose(second.f, h),
                });
            }
        }
    }
    Err(Error::Invalid(format!(
        "no composite for {} after {}",
        second.label(c),
        first.label(c)
    )))
}

/// The category of fractions of a tier for a class admitting a right calculus
/// of fractions. Objects are the core objects; morphisms are span classes.
#[derive(Clone)]
pub struct SpecCategory {
    class: MorphismClass,
    table: Arc<FinCategory>,
    tier: Arc<Tier>,
    members: Arc<Vec<Vec<SpanFraction>>>,
    lookup: Arc<HashMap<SpanFraction, MorphismId>>,
    objects: Arc<HashMap<ObjectId, ObjectId>>,
    projection: Functor,
    raw_spans: usize,
    violations: Vec<String>,
}

impl std::fmt::Debug for SpecCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpecCategory")
            .field("source", &self.class.tier().name())
            .field("objects", &self.table.object_count())
            .field("morphisms", &self.table.morphism_count())
            .finish()
    }
}

impl SpecCategory {
    pub fn source(&self) -> &Arc<Tier> {
        self.class.tier()
    }

    pub fn class(&self) -> &MorphismClass {
        &self.class
    }

    pub fn table(&self) -> &Arc<FinCategory> {
        &self.table
    }

    /// The whole category of fractions as a tier.
    pub fn tier(&self) -> &Arc<Tier> {
        &self.tier
    }

    /// The canonical functor from the source tier.
    pub fn projection(&self) -> &Functor {
        &self.projection
    }

    pub fn raw_spans(&self) -> usize {
        self.raw_spans
    }

    /// Representative-dependence and square-dependence found while composing.
    pub fn violations(&self) -> &[String] {
        &self.violations
    }

    pub fn object(&self, a: ObjectId) -> Option<ObjectId> {
        self.objects.get(&a).copied()
    }

    pub fn core_object(&self, o: ObjectId) -> ObjectId {
        self.source().core()[o.0 as usize]
    }

    pub fn members(&self, k: MorphismId) -> &[SpanFraction] {
        &self.members[k.0 as usize]
    }

    pub fn class_of(&self, span: SpanFraction) -> Option<MorphismId> {
        self.lookup.get(&span).copied()
    }

    /// Number of classes `a -> b` for core objects `a`, `b`.
    pub fn hom_classes(&self, a: ObjectId, b: ObjectId) -> Option<usize> {
        Some(self.table.hom_size(self.object(a)?, self.object(b)?))
    }
}

/// Category of fractions for the pullback-stable essential monos of a tier.
pub fn spec_build(tier: &Arc<Tier>, cap: usize) -> Result<SpecCategory> {
    spec_build_for(MorphismClass::stable(tier), cap)
}

/// Category of fractions for any class with a verified right calculus.
/// Composition is checked on every pair of representatives.
pub fn spec_build_for(class: MorphismClass, cap: usize) -> Result<SpecCategory> {
    let calc = check_right_fraction_calculus(&class)?;
    if !calc.holds {
        let w = calc.witness.map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::Hypothesis(format!(
            "{} admits no right calculus of fractions ({} fails: {w})",
            class.name(),
            calc.axiom.unwrap_or("?")
        )));
    }
    let source = class.tier().clone();
    let c = source.cat();
    let core = source.core().to_vec();
    let mut b = FinCategory::builder(format!("Spec({})", source.name()));
    let objects: HashMap<ObjectId, ObjectId> = core.iter().map(|&a| (a, b.add_object(c.object_label(a)))).collect();
    let mut members: Vec<Vec<SpanFraction>> = Vec::new();
    let mut lookup: HashMap<SpanFraction, MorphismId> = HashMap::new();
    let mut raw_spans = 0;
    for &a in &core {
        for &t in &core {
            let spans = spans_between(&class, a, t, cap)?;
            raw_spans += spans.len();
            for group in partition(&class, &spans)? {
                let k = b.add_morphism(group[0].label(c), objects[&a], objects[&t])?;
                for &span in &group {
                    lookup.insert(span, k);
                }
                members.push(group);
            }
        }
    }
    let class_of = |span: SpanFraction, lookup: &HashMap<SpanFraction, MorphismId>| {
        lookup.get(&span).copied().ok_or_else(|| {
            Error::Invalid(format!("composite {} is not an enumerated span", span.label(c)))
        })
    };
    for &a in &core {
        let id = c.identity(a);
        b.set_identity(objects[&a], class_of(SpanFraction { s: id, f: id }, &lookup)?)?;
    }
    let mut violations = Vec::new();
    let by_source: HashMap<ObjectId, Vec<usize>> = members.iter().enumerate().fold(HashMap::new(), |mut m, (k, g)| {
        m.entry(g[0].source(c)).or_default().push(k);
        m
    });
    for (k1, g1) in members.iter().enumerate() {
        let mid = g1[0].target(c);
        for &k2 in by_source.get(&mid).into_iter().flatten() {
            let g2 = &members[k2];
            let composite = class_of(compose_spans(&class, g2[0], g1[0])?, &lookup)?;
            b.set_composite(MorphismId(k2 as u64), MorphismId(k1 as u64), composite);
            let other = class_of(compose_spans_exhaustive(&class, g2[0], g1[0])?, &lookup)?;
            if other != composite && violations.len() < 16 {
                violations.push(format!(
                    "{} after {}: the two Ore squares give different classes",
                    g2[0].label(c),
                    g1[0].label(c)
                ));
            }
            for &x in g1 {
                for &y in g2 {
                    let r = class_of(compose_spans(&class, y, x)?, &lookup)?;
                    if r != composite && violations.len() < 16 {
                        violations.push(format!(
                            "{} after {} leaves the class of the representatives' composite",
                            y.label(c),
                            x.label(c)
                        ));
                    }
                }
            }
        }
    }
    let table = Arc::new(b.build()?);
    let tier = Tier::whole(table.clone());
    let objects = Arc::new(objects);
    let lookup = Arc::new(lookup);
    let projection = {
        let (objects, lookup, ambient) = (objects.clone(), lookup.clone(), source.ambient().clone());
        let objects2 = objects.clone();
        Functor::new(
            "P",
            source.clone(),
            tier.clone(),
            move |a| objects.get(&a).copied(),
            move |m| {
                let id = ambient.identity(ambient.dom(m));
                if !objects2.contains_key(&ambient.dom(m)) {
                    return None;
                }
                lookup.get(&SpanFraction { s: id, f: m }).copied()
            },
        )
    };
    Ok(SpecCategory {
        class,
        table,
        tier,
        members: Arc::new(members),
        lookup,
        objects,
        projection,
        raw_spans,
        violations,
    })
}

/// The functor out of the category of fractions through which `f` factors:
/// the class of `(s, g)` goes to `F(g) F(s)^-1`. Every representative is checked.
pub fn induced_functor(spec: &SpecCategory, f: &Functor) -> Result<Functor> {
    if !same_ambient(f.source().ambient(), spec.source().ambient()) {
        return Err(Error::InvalidFunctor {
            functor: f.name().to_string(),
            reason: "source differs from the tier of the category of fractions".into(),
        });
    }
    let (c, x) = (spec.source().cat(), f.target().cat());
    let undefined = |m: MorphismId| Error::InvalidFunctor {
        functor: f.name().to_string(),
        reason: format!("undefined on {}", c.morphism_label(m)),
    };
    let mut mor = HashMap::new();
    for k in spec.table().morphisms() {
        let mut value = None;
        for span in spec.members(k) {
            let fs = f.mor(span.s).ok_or_else(|| undefined(span.s))?;
            let inv = inverse(x, fs).ok_or_else(|| {
                Error::Hypothesis(format!("{} does not invert {}", f.name(), c.morphism_label(span.s)))
            })?;
            let v = x.compose(f.mor(span.f).ok_or_else(|| undefined(span.f))?, inv);
            match value {
                None => value = Some(v),
                Some(w) if w != v => {
                    return Err(Error::InvalidFunctor {
                        functor: f.name().to_string(),
                        reason: format!("not constant on the class of {}", spec.members(k)[0].label(c)),
                    })
                }
                Some(_) => {}
            }
        }
        mor.insert(k, value.expect("classes are non-empty"));
    }
    let mut obj = HashMap::new();
    for &a in spec.source().core() {
        let fa = f.obj(a).ok_or_else(|| Error::InvalidFunctor {
            functor: f.name().to_string(),
            reason: format!("undefined on {}", c.object_label(a)),
        })?;
        obj.insert(spec.object(a).expect("core object"), fa);
    }
    Ok(Functor::from_tables(
        format!("{}~", f.name()),
        spec.tier().clone(),
        f.target().clone(),
        obj,
        mor,
    ))
}
