//! The comparison of the category of fractions with a localization, and the
//! bimorphism and duality statements.

use super::calculus::check_right_fraction_calculus;
use super::class::MorphismClass;
use super::fractions::{induced_functor, spec_build, SpecCategory};
use crate::error::Result;
use crate::essentials::{check_condition, is_pb_stable_essential_mono, ConditionTag};
use crate::functors::{is_equivalence, is_faithful_essential_localization, quasi_inverse, Functor, LocalizationTriple};
use crate::kernel::{validate, Category, MorphismId, Tier};
use crate::report::{Outcome, TheoremReport};

fn detail(w: &Option<crate::report::Witness>) -> String {
    w.as_ref().map(|w| w.to_string()).unwrap_or_default()
}

/// Functoriality of the projection on the core and whether it inverts
/// exactly the class, both directions.
pub fn projection_violations(spec: &SpecCategory) -> Result<Vec<String>> {
    let source = spec.source();
    let c = source.cat();
    let p = spec.projection();
    let s = spec.tier().cat();
    let mut out = Vec::new();
    for &a in source.core() {
        let pa = p.obj(a).expect("core object");
        if p.mor(c.identity(a)) != Some(s.identity(pa)) {
            out.push(format!("P(id) is not an identity at {}", c.object_label(a)));
        }
    }
    let morphisms = source.core_morphisms();
    for &f in &morphisms {
        let pf = p.mor(f).expect("core morphism");
        for &z in source.core() {
            for &g in c.hom(c.cod(f), z).iter() {
                let pg = p.mor(g).expect("core morphism");
                if p.mor(c.compose(g, f)) != Some(s.compose(pg, pf)) {
                    out.push(format!(
                        "P does not preserve {} after {}",
                        c.morphism_label(g),
                        c.morphism_label(f)
                    ));
                }
            }
        }
        let member = spec.class().contains(f)?;
        let inverted = spec.tier().is_iso(pf);
        if member != inverted {
            out.push(format!(
                "{}: in {} {member}, P inverts it {inverted}",
                c.morphism_label(f),
                spec.class().name()
            ));
        }
        if out.len() >= 16 {
            break;
        }
    }
    Ok(out)
}

/// Core-codomain morphisms where pullback-stable essential and bimorphism disagree.
pub fn bimorphism_mismatches(tier: &Tier, morphisms: &[MorphismId]) -> Result<Vec<MorphismId>> {
    let mut out = Vec::new();
    for &m in morphisms {
        let bi = tier.is_mono(m) && tier.is_epi(m);
        let stable = tier.is_mono(m) && is_pb_stable_essential_mono(tier, m)?.holds;
        if bi != stable {
            out.push(m);
        }
    }
    Ok(out)
}

fn localization_hypothesis(r: &mut TheoremReport, l: &LocalizationTriple) -> Result<()> {
    let loc = is_faithful_essential_localization(l)?;
    let failed: Vec<String> = loc.assertions.iter().filter(|a| !a.passed).map(|a| a.name.clone()).collect();
    r.hypothesis("faithful essential localization", loc.outcome == Outcome::Pass, failed.join("; "));
    Ok(())
}

fn condition_hypothesis(r: &mut TheoremReport, tier: &std::sync::Arc<Tier>, tag: ConditionTag) -> Result<()> {
    let v = check_condition(tier, tag)?;
    r.hypothesis(format!("{} holds in {}", tag.as_str(), tier.name()), v.holds && !v.bounded, detail(&v.witness));
    Ok(())
}

fn assert_equivalence(r: &mut TheoremReport, name: &str, f: &Functor) {
    let e = is_equivalence(f);
    let why = [("full", &e.full), ("faithful", &e.faithful), ("essentially surjective", &e.essentially_surjective)]
        .iter()
        .filter(|(_, p)| !p.holds)
        .map(|(n, p)| format!("not {n}: {}", detail(&p.witness)))
        .collect::<Vec<_>>()
        .join("; ");
    r.assert(format!("{name} via {}", f.name()), e.holds(), why);
}

/// Builds the category of fractions and records its structural checks.
fn build_and_check(r: &mut TheoremReport, tier: &std::sync::Arc<Tier>, cap: usize) -> Result<Option<SpecCategory>> {
    let spec = match spec_build(tier, cap) {
        Ok(spec) => spec,
        Err(crate::Error::Hypothesis(why)) => {
            r.assert(format!("category of fractions of {}", tier.name()), false, why);
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let v = validate(spec.table().as_ref());
    r.assert(
        format!("category of fractions of {} is a category", tier.name()),
        v.is_valid(),
        v.violations.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join("; "),
    );
    r.assert(
        "composition independent of representatives and squares",
        spec.violations().is_empty(),
        spec.violations().join("; "),
    );
    let pv = projection_violations(&spec)?;
    r.assert("P is a functor inverting exactly the class", pv.is_empty(), pv.join("; "));
    r.note(format!(
        "{} raw spans, {} classes over {} objects",
        spec.raw_spans(),
        spec.table().morphism_count(),
        spec.table().object_count()
    ));
    Ok(Some(spec))
}

/// The localization factors through the category of fractions for the
/// pullback-stable essential monos, and the induced functor is an equivalence.
pub fn verify_fraction_equivalence(l: &LocalizationTriple, cap: usize) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("category of fractions equivalent to X", &l.name);
    localization_hypothesis(&mut r, l)?;
    condition_hypothesis(&mut r, l.x(), ConditionTag::PbseIso)?;
    r.hypothesis("C tier is pullback-closed", l.c().pullback_closed(), "");
    if !r.applicable() {
        return Ok(r);
    }
    let calc = check_right_fraction_calculus(&MorphismClass::stable(l.c()))?;
    r.assert(
        "St(Mono_E) admits a right calculus of fractions",
        calc.holds,
        format!("{} {}", calc.axiom.unwrap_or(""), detail(&calc.witness)),
    );
    let Some(spec) = build_and_check(&mut r, l.c(), cap)? else {
        return Ok(r);
    };
    match induced_functor(&spec, l.f()) {
        Ok(fbar) => {
            let composite = Functor::compose(&fbar, spec.projection())?;
            let bad = l
                .c()
                .core_morphisms()
                .into_iter()
                .find(|&m| composite.mor(m) != l.f().mor(m));
            r.assert(
                "F factors through P",
                bad.is_none(),
                bad.map(|m| l.c().cat().morphism_label(m)).unwrap_or_default(),
            );
            assert_equivalence(&mut r, "induced functor is an equivalence", &fbar);
        }
        Err(e) => {
            r.assert("F factors through P", false, e.to_string());
        }
    }
    Ok(r)
}

/// Under the pbse-iso and balanced conditions on X: a morphism is
/// pullback-stable essential iff it is a bimorphism.
pub fn verify_bimorphism_classes(l: &LocalizationTriple) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("St(Mono_E) equals the bimorphisms", &l.name);
    localization_hypothesis(&mut r, l)?;
    condition_hypothesis(&mut r, l.x(), ConditionTag::PbseIso)?;
    condition_hypothesis(&mut r, l.x(), ConditionTag::Balanced)?;
    r.hypothesis("C tier is pullback-closed", l.c().pullback_closed(), "");
    if !r.applicable() {
        return Ok(r);
    }
    let ct = l.c();
    let morphisms = ct.core_codomain_morphisms();
    let bad = bimorphism_mismatches(ct, &morphisms)?;
    r.assert(
        format!("stable iff bimorphism ({} morphisms)", morphisms.len()),
        bad.is_empty(),
        bad.iter().map(|&m| ct.cat().morphism_label(m)).take(4).collect::<Vec<_>>().join("; "),
    );
    Ok(r)
}

/// The classes of C and C^op coincide with the bimorphisms, and the
/// categories of fractions of C, of C^op (opposed) and X are equivalent.
pub fn verify_self_duality(l: &LocalizationTriple, cap: usize) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("self-duality of the category of fractions", &l.name);
    localization_hypothesis(&mut r, l)?;
    for tag in [ConditionTag::PbseIso, ConditionTag::CoPbseIso, ConditionTag::Balanced] {
        condition_hypothesis(&mut r, l.x(), tag)?;
    }
    r.hypothesis("C tier is pullback-closed", l.c().pullback_closed(), "");
    r.hypothesis("C tier is pushout-closed", l.c().pushout_closed(), "");
    if !r.applicable() {
        return Ok(r);
    }
    let ct = l.c();
    let cop = ct.opposite();
    let c = ct.cat();
    let morphisms = ct.core_morphisms();
    let mut stable_c = Vec::new();
    let mut stable_op = Vec::new();
    let mut bi = Vec::new();
    for &m in &morphisms {
        if ct.is_mono(m) && is_pb_stable_essential_mono(ct, m)?.holds {
            stable_c.push(m);
        }
        if cop.is_mono(m) && is_pb_stable_essential_mono(&cop, m)?.holds {
            stable_op.push(m);
        }
        if ct.is_mono(m) && ct.is_epi(m) {
            bi.push(m);
        }
    }
    let diff = |a: &[MorphismId], b: &[MorphismId]| {
        a.iter()
            .filter(|m| !b.contains(m))
            .chain(b.iter().filter(|m| !a.contains(m)))
            .map(|&m| c.morphism_label(m))
            .take(4)
            .collect::<Vec<_>>()
            .join("; ")
    };
    let d1 = diff(&stable_c, &bi);
    r.assert(format!("St(Mono_E(C)) = bimorphisms ({} core morphisms)", morphisms.len()), d1.is_empty(), d1);
    let d2 = diff(&stable_op, &bi);
    r.assert("St(Mono_E(C^op)) = bimorphisms", d2.is_empty(), d2);
    r.note(format!("{} bimorphisms among the core morphisms", bi.len()));

    let Some(spec) = build_and_check(&mut r, ct, cap)? else {
        return Ok(r);
    };
    let Some(spec_op) = build_and_check(&mut r, &cop, cap)? else {
        return Ok(r);
    };
    let lop = l.opposite();
    let (fbar, fbar_op) = match (induced_functor(&spec, l.f()), induced_functor(&spec_op, lop.f())) {
        (Ok(a), Ok(b)) => (a, b.opposite()),
        (a, b) => {
            let why = [a.err(), b.err()].into_iter().flatten().map(|e| e.to_string()).collect::<Vec<_>>();
            r.assert("F induces functors on both categories of fractions", false, why.join("; "));
            return Ok(r);
        }
    };
    assert_equivalence(&mut r, "Spec(C) equivalent to X", &fbar);
    assert_equivalence(&mut r, "Spec(C^op)^op equivalent to X", &fbar_op);
    match quasi_inverse(&fbar_op).and_then(|q| Functor::compose(&q, &fbar)) {
        Ok(direct) => assert_equivalence(&mut r, "Spec(C) equivalent to Spec(C^op)^op", &direct),
        Err(e) => {
            r.assert("Spec(C) equivalent to Spec(C^op)^op", false, e.to_string());
        }
    }
    r.note("the direct comparison is the induced functor of F followed by a quasi-inverse of the one for F^op");
    Ok(r)
}
