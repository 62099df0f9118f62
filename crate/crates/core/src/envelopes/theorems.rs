use std::sync::Arc;

use super::certificate::{certify, EnvelopeKind};
use super::objects::{injective_envelopes_of, injective_objects, is_injective};
use crate::error::{Error, Result};
use crate::essentials::{check_condition, is_pb_stable_essential_mono, ConditionTag};
use crate::functors::{is_equivalence, is_faithful_essential_localization, Functor, LocalizationTriple};
use crate::kernel::{terminal, Tier};
use crate::report::{Outcome, TheoremReport};
use crate::spectral::{induced_functor, spec_build};

struct Words {
    kind: EnvelopeKind,
    extremal: &'static str,
    envelope: &'static str,
    split: ConditionTag,
    right: &'static str,
    unit: &'static str,
}

const INJECTIVE: Words = Words {
    kind: EnvelopeKind::InjectiveEnvelope,
    extremal: "injective",
    envelope: "injective envelope",
    split: ConditionTag::MonoSplit,
    right: "G",
    unit: "eta",
};

const PROJECTIVE: Words = Words {
    kind: EnvelopeKind::ProjectiveCover,
    extremal: "projective",
    envelope: "projective cover",
    split: ConditionTag::CoMonoSplit,
    right: "H",
    unit: "theta",
};

fn hypotheses(r: &mut TheoremReport, l: &LocalizationTriple, original: &LocalizationTriple, w: &Words) -> Result<()> {
    let loc = is_faithful_essential_localization(l)?;
    let failed: Vec<String> = loc.assertions.iter().filter(|a| !a.passed).map(|a| a.name.clone()).collect();
    r.hypothesis("faithful essential localization", loc.outcome == Outcome::Pass, failed.join("; "));
    let v = check_condition(original.x(), w.split)?;
    r.hypothesis(
        format!("{} holds in {}", w.split.as_str(), original.x().name()),
        v.holds,
        v.witness.map(|w| w.to_string()).unwrap_or_default(),
    );
    Ok(())
}

/// `l` is already dualized for covers; `original` names the subject.
fn natural_envelopes(l: &LocalizationTriple, original: &LocalizationTriple, w: &Words) -> Result<TheoremReport> {
    let mut r = TheoremReport::new(format!("natural {}s", w.envelope), &original.name);
    hypotheses(&mut r, l, original, w)?;
    if !r.applicable() {
        return Ok(r);
    }
    let ct = l.c();
    let c = ct.cat();
    let nat = l.eta().violations();
    r.assert(
        format!("({}{}, {}) is a pointed endofunctor", w.right, "F", w.unit),
        nat.is_empty(),
        nat.join("; "),
    );
    let mut bad = Vec::new();
    for &a in ct.core() {
        let cert = certify(l, a, w.kind, w.split.as_str())?;
        if !cert.is_valid() {
            bad.push(cert.to_string());
        }
    }
    r.assert(
        format!("every {} component is a certified {}", w.unit, w.envelope),
        bad.is_empty(),
        bad.join("; "),
    );
    let inj = injective_objects(ct)?;
    let inj_tier = Tier::new(format!("{}({})", w.extremal, ct.name()), ct.ambient().clone(), inj.clone())?;
    r.note(format!(
        "{} objects: {}",
        w.extremal,
        inj.iter().map(|&o| c.object_label(o)).collect::<Vec<_>>().join(", ")
    ));
    let g = l.g().restrict(l.x().clone(), inj_tier)?;
    let lands = l.x().core().iter().all(|&y| g.obj(y).is_some_and(|o| inj.contains(&o)));
    r.assert(format!("{} lands in the {} objects", w.right, w.extremal), lands, "");
    if lands {
        let e = is_equivalence(&g);
        r.assert(format!("{} objects equivalent to X via {}", w.extremal, w.right), e.holds(), "");
    }
    Ok(r)
}

fn envelope_theorem(original: &LocalizationTriple, w: &Words, cap: usize) -> Result<TheoremReport> {
    let dual;
    let l = match w.kind {
        EnvelopeKind::InjectiveEnvelope => original,
        EnvelopeKind::ProjectiveCover => {
            dual = original.opposite();
            &dual
        }
    };
    let mut r = TheoremReport::new(format!("{}s from the localization", w.envelope), &original.name);
    hypotheses(&mut r, l, original, w)?;
    if !r.applicable() {
        return Ok(r);
    }
    let ct = l.c();
    let c = ct.cat();
    let bad_claim1: Vec<String> = l
        .x()
        .core()
        .iter()
        .filter_map(|&y| l.g().obj(y))
        .filter(|&o| !is_injective(ct, o).unwrap_or(false))
        .map(|o| c.object_label(o))
        .collect();
    r.assert(
        format!("{}(Y) is {} for every Y", w.right, w.extremal),
        bad_claim1.is_empty(),
        bad_claim1.join(", "),
    );
    let mut not_essential = Vec::new();
    let mut iso_mismatch = Vec::new();
    let mut not_unique = Vec::new();
    for &a in ct.core() {
        let cert = certify(l, a, w.kind, w.split.as_str())?;
        if !cert.essential {
            not_essential.push(cert.morphism_label.clone());
        }
        if !cert.iso_iff_extremal {
            iso_mismatch.push(cert.object_label.clone());
        }
        let all = injective_envelopes_of(ct, a)?;
        for (i, &m1) in all.iter().enumerate() {
            for &m2 in &all[i + 1..] {
                let (y1, y2) = (c.cod(m1), c.cod(m2));
                let iso = c
                    .hom(y1, y2)
                    .iter()
                    .any(|&k| ct.is_iso(k) && c.compose(k, m1) == m2);
                if !iso {
                    not_unique.push(format!("{} vs {}", c.morphism_label(m1), c.morphism_label(m2)));
                }
            }
        }
    }
    r.assert(
        format!("every {} component is essential", w.unit),
        not_essential.is_empty(),
        not_essential.join("; "),
    );
    r.assert(
        format!("an object is {} iff its {} component is an iso", w.extremal, w.unit),
        iso_mismatch.is_empty(),
        iso_mismatch.join(", "),
    );
    r.assert(
        format!("any two {}s of an object are isomorphic under it", w.envelope),
        not_unique.is_empty(),
        not_unique.into_iter().take(4).collect::<Vec<_>>().join("; "),
    );
    let natural = natural_envelopes(l, original, w)?;
    for a in &natural.assertions {
        r.assert(a.name.clone(), a.passed, a.detail.clone());
    }
    r.notes.extend(natural.notes);

    let pbse = check_condition(l.x(), ConditionTag::PbseIso)?;
    if pbse.holds && !pbse.bounded && ct.pullback_closed() {
        let spec = spec_build(ct, cap)?;
        let fbar = induced_functor(&spec, l.f())?;
        let inj = injective_objects(ct)?;
        let inj_tier = Tier::new(format!("{}({})", w.extremal, ct.name()), ct.ambient().clone(), inj)?;
        let g = l.g().restrict(l.x().clone(), inj_tier)?;
        let through = Functor::compose(&g, &fbar)?;
        r.assert("category of fractions equivalent to X", is_equivalence(&fbar).holds(), "");
        r.assert(
            format!("category of fractions equivalent to the {} objects via {}", w.extremal, through.name()),
            is_equivalence(&through).holds(),
            "",
        );
    } else {
        r.note("category of fractions skipped: pbse-iso or pullback closure unavailable");
    }
    Ok(r)
}

/// The pointed endofunctor `(GF, η)`: naturality, every component an
/// injective envelope, injectives equivalent to X through `G`.
pub fn verify_natural_envelopes(l: &LocalizationTriple) -> Result<TheoremReport> {
    natural_envelopes(l, l, &INJECTIVE)
}

/// Unit components as injective envelopes when every mono of X splits.
pub fn verify_injective_envelopes(l: &LocalizationTriple, cap: usize) -> Result<TheoremReport> {
    envelope_theorem(l, &INJECTIVE, cap)
}

/// Counit components of `H ⊣ F` as projective covers when every epi of X splits.
pub fn verify_projective_covers(l: &LocalizationTriple, cap: usize) -> Result<TheoremReport> {
    envelope_theorem(l, &PROJECTIVE, cap)
}

/// A finite meet-semilattice with top: every morphism is a pullback-stable
/// essential mono, the category of fractions is trivial, the top is the only
/// injective, and each `a -> top` is the only envelope of `a`.
pub fn verify_semilattice_example(tier: &Arc<Tier>, cap: usize) -> Result<TheoremReport> {
    let c = tier.cat();
    let mut r = TheoremReport::new("semilattice example", tier.name());
    let thin = tier.core().iter().all(|&a| tier.core().iter().all(|&b| c.hom_size(a, b) <= 1));
    r.hypothesis("thin", thin, "");
    let top = terminal(c);
    r.hypothesis("has a largest element", top.is_some(), "");
    r.hypothesis("pullback-closed", tier.pullback_closed(), "");
    let Some(top) = top.filter(|_| r.applicable()) else {
        return Ok(r);
    };
    let morphisms = tier.core_morphisms();
    let mut stable = 0;
    for &m in &morphisms {
        if tier.is_mono(m) && is_pb_stable_essential_mono(tier, m)?.holds {
            stable += 1;
        }
    }
    r.assert(
        format!("all {} morphisms are pullback-stable essential monos", morphisms.len()),
        stable == morphisms.len(),
        format!("{stable} are"),
    );
    match spec_build(tier, cap) {
        Ok(spec) => {
            let sizes_one = tier
                .core()
                .iter()
                .all(|&a| tier.core().iter().all(|&b| spec.hom_classes(a, b) == Some(1)));
            r.assert("every hom-set of the category of fractions is a singleton", sizes_one, "");
            let to_one = crate::corpus::to_terminal(spec.tier());
            r.assert(
                "the category of fractions is equivalent to the terminal category",
                is_equivalence(&to_one).holds(),
                "",
            );
        }
        Err(Error::Hypothesis(why)) => {
            r.assert("category of fractions exists", false, why);
        }
        Err(e) => return Err(e),
    }
    let inj = injective_objects(tier)?;
    r.assert(
        "the largest element is the only injective",
        inj == vec![top],
        inj.iter().map(|&o| c.object_label(o)).collect::<Vec<_>>().join(", "),
    );
    let mut wrong = Vec::new();
    for &a in tier.core() {
        let env = injective_envelopes_of(tier, a)?;
        if env != c.hom(a, top).to_vec() {
            wrong.push(c.object_label(a));
        }
    }
    r.assert("each object's only envelope is its map to the top", wrong.is_empty(), wrong.join(", "));
    Ok(r)
}
