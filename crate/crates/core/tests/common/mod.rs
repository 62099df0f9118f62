//! Brute-force oracles. They enumerate functions and relations directly and
//! use the library only for hom-set listings and composition.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use finkat::corpus::resolve;
use finkat::functors::{validate_adjunction, verify_localization_remarks, LocalizationTriple};
use finkat::kernel::{Carrier, Category, ConcreteCategory, MorphismId, ObjectId, Tier};
use finkat::report::Outcome;
use finkat::spectral::{compose_spans, span_equivalent, spec_build, SpanFraction, SpecCategory, DEFAULT_SPAN_CAP};

/// Every corpus entry at its default parameters.
pub const CORPUS: [&str; 11] = [
    "semilattice:B2",
    "semilattice:chain3",
    "finset:3,9",
    "pointed-initial:2,4",
    "pointed-finset:2,4",
    "finpreord:2,4",
    "pointed-finpreord:2,4",
    "ab",
    "terminal",
    "arrow",
    "discrete:3",
];

/// All functions `{0..n} -> {0..m}` as value vectors.
pub fn functions(n: usize, m: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| (0..m as u8).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

pub fn is_injective(v: &[u8]) -> bool {
    v.iter().collect::<HashSet<_>>().len() == v.len()
}

pub fn is_surjective(v: &[u8], m: usize) -> bool {
    v.iter().collect::<HashSet<_>>().len() == m
}

pub fn compose(g: &[u8], f: &[u8]) -> Vec<u8> {
    f.iter().map(|&x| g[x as usize]).collect()
}

/// Structure-preserving maps between carriers, enumerated from all functions.
pub fn maps(p: Carrier, q: Carrier, ordered: bool, pointed: bool) -> Vec<Vec<u8>> {
    let (n, m) = (p.size as usize, q.size as usize);
    functions(n, m)
        .into_iter()
        .filter(|v| !pointed || n == 0 || v[0] == 0)
        .filter(|v| !ordered || (0..n).all(|i| (0..n).all(|j| !p.leq(i, j) || q.leq(v[i] as usize, v[j] as usize))))
        .collect()
}

/// Injective objects among `objects` of a concrete category: every map into `x`
/// extends along every injective map between objects of `objects`.
pub fn injective_carriers(c: &ConcreteCategory, objects: &[ObjectId], ordered: bool, pointed: bool) -> Vec<ObjectId> {
    let car = |o: ObjectId| c.carrier(o);
    objects
        .iter()
        .copied()
        .filter(|&x| {
            objects.iter().all(|&a| {
                objects.iter().all(|&b| {
                    let into_x = maps(car(a), car(x), ordered, pointed);
                    let out_of_b = maps(car(b), car(x), ordered, pointed);
                    maps(car(a), car(b), ordered, pointed)
                        .iter()
                        .filter(|m| is_injective(m))
                        .all(|m| into_x.iter().all(|h| out_of_b.iter().any(|k| compose(k, m) == *h)))
                })
            })
        })
        .collect()
}

/// Projective objects among `objects`: every map out of `x` lifts along every
/// surjective map between objects of `objects`.
pub fn projective_carriers(c: &ConcreteCategory, objects: &[ObjectId], ordered: bool, pointed: bool) -> Vec<ObjectId> {
    let car = |o: ObjectId| c.carrier(o);
    objects
        .iter()
        .copied()
        .filter(|&x| {
            objects.iter().all(|&a| {
                objects.iter().all(|&b| {
                    let to_a = maps(car(x), car(a), ordered, pointed);
                    let to_b = maps(car(x), car(b), ordered, pointed);
                    maps(car(b), car(a), ordered, pointed)
                        .iter()
                        .filter(|e| is_surjective(e, car(a).size as usize))
                        .all(|e| to_a.iter().all(|h| to_b.iter().any(|k| compose(e, k) == *h)))
                })
            })
        })
        .collect()
}

/// Left cancellable against every object of the ambient.
pub fn brute_mono(c: &dyn Category, f: MorphismId) -> bool {
    let a = c.dom(f);
    c.objects().all(|q| {
        let hom = c.hom(q, a);
        let images: HashSet<MorphismId> = hom.iter().map(|&g| c.compose(f, g)).collect();
        images.len() == hom.len()
    })
}

pub fn brute_epi(c: &dyn Category, f: MorphismId) -> bool {
    let b = c.cod(f);
    c.objects().all(|q| {
        let hom = c.hom(b, q);
        let images: HashSet<MorphismId> = hom.iter().map(|&g| c.compose(g, f)).collect();
        images.len() == hom.len()
    })
}

/// Mono and/epi flags of the tier against the brute-force definitions.
pub fn probe_mismatches(tier: &Arc<Tier>) -> Vec<String> {
    let c = tier.cat();
    let mut out = Vec::new();
    for f in tier.core_morphisms() {
        if tier.is_mono(f) != brute_mono(c, f) {
            out.push(format!("mono {}", c.morphism_label(f)));
        }
        if tier.is_epi(f) != brute_epi(c, f) {
            out.push(format!("epi {}", c.morphism_label(f)));
        }
    }
    out
}

pub fn duality_violations(tier: &Arc<Tier>) -> Vec<String> {
    let op = tier.opposite();
    let c = tier.cat();
    tier.core_morphisms()
        .into_iter()
        .filter(|&f| tier.is_mono(f) != op.is_epi(f) || tier.is_epi(f) != op.is_mono(f))
        .map(|f| c.morphism_label(f))
        .collect()
}

/// Number of mediating maps `w -> apex` for every commuting cone over the
/// cospan with vertex `w`; universality means every count is 1.
fn mediating_counts(c: &dyn Category, p: MorphismId, q: MorphismId, apex: ObjectId, p1: MorphismId, p2: MorphismId, w: ObjectId) -> Vec<usize> {
    let mut by_legs: HashMap<(MorphismId, MorphismId), usize> = HashMap::new();
    for &h in c.hom(w, apex).iter() {
        *by_legs.entry((c.compose(p1, h), c.compose(p2, h))).or_default() += 1;
    }
    let mut out = Vec::new();
    for &a in c.hom(w, c.dom(p)).iter() {
        let pa = c.compose(p, a);
        for &b in c.hom(w, c.dom(q)).iter() {
            if c.compose(q, b) == pa {
                out.push(by_legs.get(&(a, b)).copied().unwrap_or(0));
            }
        }
    }
    out
}

fn universal_over(c: &dyn Category, p: MorphismId, q: MorphismId, apex: ObjectId, p1: MorphismId, p2: MorphismId, tests: &[ObjectId]) -> bool {
    c.compose(p, p1) == c.compose(q, p2)
        && tests.iter().all(|&w| mediating_counts(c, p, q, apex, p1, p2, w).iter().all(|&n| n == 1))
}

/// For the pullback of `p` and `q` found by the tier: it is universal over the
/// core plus its apex (when the apex has at most 20000 endomorphisms), and every other such cone with vertex in the core is
/// isomorphic to it by exactly one comparison map, which is an iso.
pub fn pullback_uniqueness(tier: &Arc<Tier>, p: MorphismId, q: MorphismId) -> Result<(), String> {
    let c = tier.cat();
    let Some(pb) = tier.pullback(p, q).map_err(|e| e.to_string())? else {
        return Ok(());
    };
    let mut tests: Vec<ObjectId> = tier.core().to_vec();
    if c.hom_size(pb.apex, pb.apex) <= 20_000 {
        tests.push(pb.apex);
    }
    let label = || format!("{} / {}", c.morphism_label(p), c.morphism_label(q));
    if !universal_over(c, p, q, pb.apex, pb.proj1, pb.proj2, &tests) {
        return Err(format!("{}: returned square is not universal", label()));
    }
    for &w in &tests {
        for &u in c.hom(w, c.dom(p)).iter() {
            for &v in c.hom(w, c.dom(q)).iter() {
                if c.compose(p, u) != c.compose(q, v) || !universal_over(c, p, q, w, u, v, &tests) {
                    continue;
                }
                let comparisons: Vec<MorphismId> = c
                    .hom(w, pb.apex)
                    .iter()
                    .copied()
                    .filter(|&h| c.compose(pb.proj1, h) == u && c.compose(pb.proj2, h) == v)
                    .collect();
                let [h] = comparisons[..] else {
                    return Err(format!("{}: {} comparison maps", label(), comparisons.len()));
                };
                let iso = c
                    .hom(pb.apex, w)
                    .iter()
                    .any(|&k| c.compose(k, h) == c.identity(w) && c.compose(h, k) == c.identity(pb.apex));
                if !iso {
                    return Err(format!("{}: comparison from {} is not an iso", label(), c.object_label(w)));
                }
            }
        }
    }
    Ok(())
}

/// Every cospan of core morphisms; `stride` keeps every stride-th one.
pub fn core_cospans(tier: &Tier, stride: usize) -> Vec<(MorphismId, MorphismId)> {
    let c = tier.cat();
    let mut out = Vec::new();
    let mut i = 0;
    for &z in tier.core() {
        let legs: Vec<MorphismId> = tier.core().iter().flat_map(|&a| c.hom(a, z).to_vec()).collect();
        for &p in &legs {
            for &q in &legs {
                if i % stride == 0 {
                    out.push((p, q));
                }
                i += 1;
            }
        }
    }
    out
}

/// Keys `(t, f u)` for the ways `s u = t` factors a class member `t` through the leg.
fn span_keys(spec: &SpecCategory, x: SpanFraction) -> HashSet<(MorphismId, MorphismId)> {
    let class = spec.class();
    let c = class.tier().cat();
    let mut keys = HashSet::new();
    for &t in class.landing_in(c.cod(x.s)).expect("class membership").iter() {
        for &u in c.hom(c.dom(t), c.dom(x.s)).iter() {
            if c.compose(x.s, u) == t {
                keys.insert((t, c.compose(x.f, u)));
            }
        }
    }
    keys
}

/// The one-step relation: a common refinement through a class member.
pub fn directly_related(spec: &SpecCategory, x: SpanFraction, y: SpanFraction) -> bool {
    !span_keys(spec, x).is_disjoint(&span_keys(spec, y))
}

/// Raw spans `a -> b`, read back from the classes of the built category.
pub fn spans(spec: &SpecCategory, a: ObjectId, b: ObjectId) -> Vec<SpanFraction> {
    let t = spec.table();
    let (Some(x), Some(y)) = (spec.object(a), spec.object(b)) else {
        return Vec::new();
    };
    t.hom(x, y).iter().flat_map(|&k| spec.members(k).to_vec()).collect()
}

/// The one-step relation on `spans` is reflexive, symmetric and transitive,
/// and it agrees with the classes of the built category and `span_equivalent`.
pub fn span_relation_violations(spec: &SpecCategory, spans: &[SpanFraction]) -> Vec<String> {
    let c = spec.class().tier().cat();
    let keys: Vec<_> = spans.iter().map(|&x| span_keys(spec, x)).collect();
    let n = spans.len();
    let rel = |i: usize, j: usize| !keys[i].is_disjoint(&keys[j]);
    let mut out = Vec::new();
    for i in 0..n {
        if !rel(i, i) {
            out.push(format!("not reflexive at {}", spans[i].label(c)));
        }
        for j in 0..n {
            if rel(i, j) != rel(j, i) {
                out.push(format!("not symmetric: {} {}", spans[i].label(c), spans[j].label(c)));
            }
            let same = spec.class_of(spans[i]) == spec.class_of(spans[j]);
            if rel(i, j) != same {
                out.push(format!("relation and classes disagree: {} {}", spans[i].label(c), spans[j].label(c)));
            }
            if j < 3 && span_equivalent(spec.class(), spans[i], spans[j]).ok() != Some(rel(i, j)) {
                out.push(format!("span_equivalent disagrees: {} {}", spans[i].label(c), spans[j].label(c)));
            }
            for k in 0..n {
                if rel(i, j) && rel(j, k) && !rel(i, k) {
                    out.push(format!("not transitive through {}", spans[j].label(c)));
                }
            }
        }
        if out.len() > 5 {
            break;
        }
    }
    out
}

/// Composites of every pair of representatives of composable classes land in
/// the class the table records.
pub fn composition_violations(spec: &SpecCategory, first: MorphismId, second: MorphismId) -> Vec<String> {
    let t = spec.table();
    let c = spec.class().tier().cat();
    let want = t.compose(second, first);
    let mut out = Vec::new();
    for &x in spec.members(first) {
        for &y in spec.members(second) {
            match compose_spans(spec.class(), y, x) {
                Ok(z) if spec.class_of(z) == Some(want) => {}
                Ok(z) => out.push(format!("{} after {} gave {}", y.label(c), x.label(c), z.label(c))),
                Err(e) => out.push(e.to_string()),
            }
        }
    }
    out
}

pub fn spec_of(key: &str) -> Option<SpecCategory> {
    let item = resolve(key).unwrap();
    spec_build(&item.tier, DEFAULT_SPAN_CAP).ok()
}

/// Triangle identities of both adjunctions and of their opposites.
pub fn triangle_violations(l: &LocalizationTriple) -> Vec<String> {
    let op = l.opposite();
    [&l.upper, &l.lower, &op.upper, &op.lower]
        .into_iter()
        .flat_map(|adj| validate_adjunction(adj).violations)
        .collect()
}

pub fn remarks_pass(l: &LocalizationTriple) -> Result<(), String> {
    let r = verify_localization_remarks(l).map_err(|e| e.to_string())?;
    if r.outcome == Outcome::Pass {
        Ok(())
    } else {
        Err(r.to_string())
    }
}

/// Essential monos of a FinSet tier into the core: injective, and every map
/// `g` into a core object with `g . f` injective is itself injective.
pub fn brute_finset_essential_monos(tier: &Tier, sets: &ConcreteCategory) -> Vec<MorphismId> {
    let sizes: Vec<usize> = tier.core().iter().map(|&y| sets.size(y)).collect();
    tier.core_codomain_morphisms()
        .into_iter()
        .filter(|&m| {
            let f = sets.function(m);
            let b = sets.size(tier.cat().cod(m));
            is_injective(&f)
                && sizes.iter().all(|&y| {
                    functions(b, y).iter().all(|g| !is_injective(&compose(g, &f)) || is_injective(g))
                })
        })
        .collect()
}
