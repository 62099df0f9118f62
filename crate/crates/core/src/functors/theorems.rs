//! Exhaustive verification of the preservation theorems on a localization.

use serde::Serialize;

use super::adjunction::{validate_adjunction, Adjunction, LocalizationTriple};
use super::fibration::{weak_fibration_kind, weak_opfibration, FibrationKind};
use super::functor::Functor;
use super::properties::{full_and_faithful, functor_properties, is_equivalence, PropertyReport};
use crate::error::Result;
use crate::essentials::{check_condition, is_essential_mono, is_pb_stable_essential_mono, ConditionTag};
use crate::kernel::MorphismId;
use crate::report::{TheoremReport, Witness};

fn witness_detail(w: &Option<Witness>) -> String {
    w.as_ref().map(|w| w.to_string()).unwrap_or_default()
}

/// `F` preserves pullbacks and the terminal object, `G`, `H` are fully
/// faithful, `F` is faithful, and both adjunctions are valid.
pub fn is_faithful_essential_localization(l: &LocalizationTriple) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("faithful essential localization", &l.name);
    for adj in [&l.upper, &l.lower] {
        let v = validate_adjunction(adj);
        r.assert(format!("{} is an adjunction", adj.name), v.is_valid(), v.violations.join("; "));
    }
    let shared = l.shared_middle_violations();
    r.assert("both adjunctions share F", shared.is_empty(), shared.join("; "));
    if !r.assertions.iter().all(|a| a.passed) {
        return Ok(r);
    }
    let props = functor_properties(l.f())?;
    r.assert("F preserves pullbacks", props.preserves_pullbacks.holds, witness_detail(&props.preserves_pullbacks.witness));
    match &props.preserves_terminal {
        Some(p) => {
            r.assert("F preserves the terminal object", p.holds, witness_detail(&p.witness));
        }
        None => r.note("source has no terminal object; finite limits checked as pullbacks only"),
    }
    r.assert("F is faithful", props.faithful.holds, witness_detail(&props.faithful.witness));
    for (name, functor) in [("G", l.g()), ("H", l.h())] {
        let (full, faithful) = full_and_faithful(functor);
        r.assert(format!("{name} is full"), full.holds, witness_detail(&full.witness));
        r.assert(format!("{name} is faithful"), faithful.holds, witness_detail(&faithful.witness));
    }
    r.note("finite limits are checked as pullbacks of core cospans plus the terminal object");
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct SleVerdict {
    pub adjunction: String,
    pub holds: bool,
    /// Some pullback of a unit component was missing from the ambient.
    pub bounded: bool,
    pub witness: Option<Witness>,
    /// Fibration kind of the left adjoint, computed when the hypotheses hold.
    pub conclusion: Option<FibrationKind>,
}

/// Unit components are pullback-stable epis (pulled back along every
/// morphism from a core object) and counit components are epis. When they
/// are, the left adjoint is checked to be a weak fibration.
pub fn check_sle_hypotheses(adj: &Adjunction) -> Result<SleVerdict> {
    let (ct, xt) = (adj.c(), adj.x());
    let c = ct.cat();
    let mut verdict = SleVerdict {
        adjunction: adj.name.clone(),
        holds: false,
        bounded: false,
        witness: None,
        conclusion: None,
    };
    let v = validate_adjunction(adj);
    if !v.is_valid() {
        verdict.witness = Some(Witness {
            morphisms: Vec::new(),
            labels: Vec::new(),
            reason: v.violations.join("; "),
        });
        return Ok(verdict);
    }
    for &a in ct.core() {
        let eta = adj.unit.component(a).expect("validated");
        if !ct.is_epi(eta) {
            verdict.witness = Some(Witness::new(c, &[eta], "unit component is not epi"));
            return Ok(verdict);
        }
        let gfa = c.cod(eta);
        for &y in ct.core() {
            for &u in c.hom(y, gfa).iter() {
                match ct.pullback(eta, u)? {
                    Some(pb) if !ct.is_epi(pb.proj2) => {
                        verdict.witness = Some(Witness::new(c, &[eta, u], "pullback of a unit component is not epi"));
                        return Ok(verdict);
                    }
                    Some(_) => {}
                    None => verdict.bounded = true,
                }
            }
        }
    }
    for &b in xt.core() {
        let eps = adj.counit.component(b).expect("validated");
        if !xt.is_epi(eps) {
            verdict.witness = Some(Witness::new(xt.cat(), &[eps], "counit component is not epi"));
            return Ok(verdict);
        }
    }
    verdict.holds = true;
    verdict.conclusion = Some(weak_fibration_kind(&adj.left).kind);
    Ok(verdict)
}

fn first_discrepancy(
    f: &Functor,
    mut test: impl FnMut(MorphismId, MorphismId) -> Result<Option<String>>,
) -> Result<(usize, Option<String>)> {
    let c = f.source().cat();
    let mut checked = 0;
    for m in f.source().core_codomain_morphisms() {
        let Some(fm) = f.mor(m) else { continue };
        checked += 1;
        if let Some(why) = test(m, fm)? {
            return Ok((checked, Some(format!("{}: {why}", c.morphism_label(m)))));
        }
    }
    Ok((checked, None))
}

/// Weak opfibration preserving and reflecting monos: `m` essential iff `F(m)` is.
pub fn verify_essential_preservation(f: &Functor, props: &PropertyReport) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("essential monos preserved and reflected", f.name());
    let op = weak_opfibration(f);
    r.hypothesis("F is a weak opfibration", op.holds, witness_detail(&op.witness));
    r.hypothesis("F preserves monos", props.preserves_monos.holds, witness_detail(&props.preserves_monos.witness));
    r.hypothesis("F reflects monos", props.reflects_monos.holds, witness_detail(&props.reflects_monos.witness));
    if !r.applicable() {
        return Ok(r);
    }
    let (ct, xt) = (f.source(), f.target());
    let (checked, bad) = first_discrepancy(f, |m, fm| {
        let (a, b) = (is_essential_mono(ct, m)?, is_essential_mono(xt, fm)?);
        Ok((a != b).then(|| format!("essential in source {a}, image essential {b}")))
    })?;
    r.assert(
        format!("m essential iff F(m) essential ({checked} morphisms)"),
        bad.is_none(),
        bad.unwrap_or_default(),
    );
    Ok(r)
}

/// Special weak bifibration preserving pullbacks and reflecting monos:
/// `m` pullback-stable essential iff `F(m)` is.
pub fn verify_stable_preservation(f: &Functor, props: &PropertyReport) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("pullback-stable essential monos preserved and reflected", f.name());
    let fib = weak_fibration_kind(f);
    let op = weak_opfibration(f);
    r.hypothesis("F is a special weak fibration", fib.kind == FibrationKind::Special, witness_detail(&fib.witness));
    r.hypothesis("F is a weak opfibration", op.holds, witness_detail(&op.witness));
    r.hypothesis("F preserves pullbacks", props.preserves_pullbacks.holds, witness_detail(&props.preserves_pullbacks.witness));
    r.hypothesis("F reflects monos", props.reflects_monos.holds, witness_detail(&props.reflects_monos.witness));
    r.hypothesis("source tier is pullback-closed", f.source().pullback_closed(), "");
    r.hypothesis("target tier is pullback-closed", f.target().pullback_closed(), "");
    if !r.applicable() {
        return Ok(r);
    }
    let (ct, xt) = (f.source(), f.target());
    let (checked, bad) = first_discrepancy(f, |m, fm| {
        let a = is_pb_stable_essential_mono(ct, m)?;
        let b = is_pb_stable_essential_mono(xt, fm)?;
        if a.bounded || b.bounded {
            return Ok(Some("verdict bounded by a missing pullback".into()));
        }
        Ok((a.holds != b.holds).then(|| format!("stable in source {}, image stable {}", a.holds, b.holds)))
    })?;
    r.assert(
        format!("m pullback-stable essential iff F(m) is ({checked} morphisms)"),
        bad.is_none(),
        bad.unwrap_or_default(),
    );
    Ok(r)
}

/// Faithful essential localization with every pullback-stable essential mono
/// of `X` an iso: `m` pullback-stable essential iff `F(m)` is an iso.
pub fn verify_iso_detection(l: &LocalizationTriple) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("pullback-stable essential iff image iso", &l.name);
    let loc = is_faithful_essential_localization(l)?;
    r.hypothesis("faithful essential localization", loc.outcome == crate::report::Outcome::Pass, failed_names(&loc));
    let cond = check_condition(l.x(), ConditionTag::PbseIso)?;
    r.hypothesis(
        "pbse-iso holds in X",
        cond.holds && !cond.bounded,
        witness_detail(&cond.witness),
    );
    r.hypothesis("C tier is pullback-closed", l.c().pullback_closed(), "");
    if !r.applicable() {
        return Ok(r);
    }
    let (ct, xt) = (l.c(), l.x());
    let (checked, bad) = first_discrepancy(l.f(), |m, fm| {
        let a = is_pb_stable_essential_mono(ct, m)?;
        if a.bounded {
            return Ok(Some("verdict bounded by a missing pullback".into()));
        }
        let b = xt.is_iso(fm);
        Ok((a.holds != b).then(|| format!("stable {}, image iso {b}", a.holds)))
    })?;
    r.assert(
        format!("m pullback-stable essential iff F(m) iso ({checked} morphisms, 0 discrepancies expected)"),
        bad.is_none(),
        bad.unwrap_or_default(),
    );
    Ok(r)
}

pub(crate) fn failed_names(r: &TheoremReport) -> String {
    r.hypotheses
        .iter()
        .chain(&r.assertions)
        .filter(|c| !c.passed)
        .map(|c| {
            if c.detail.is_empty() {
                c.name.clone()
            } else {
                format!("{} ({})", c.name, c.detail)
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// All three preservation statements on one triple.
pub fn verify_preservation_theorems(l: &LocalizationTriple) -> Result<Vec<TheoremReport>> {
    let props = functor_properties(l.f())?;
    Ok(vec![
        verify_essential_preservation(l.f(), &props)?,
        verify_stable_preservation(l.f(), &props)?,
        verify_iso_detection(l)?,
    ])
}

/// Consequences of full faithfulness of `G` and `H` on the transformations,
/// and the standard facts about limit-preserving and faithful functors.
pub fn verify_localization_remarks(l: &LocalizationTriple) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("localization remarks", &l.name);
    let loc = is_faithful_essential_localization(l)?;
    r.hypothesis("faithful essential localization", loc.outcome == crate::report::Outcome::Pass, failed_names(&loc));
    if !r.applicable() {
        return Ok(r);
    }
    let (ct, xt) = (l.c(), l.x());
    let (c, x) = (ct.cat(), xt.cat());
    let first_bad = |name: &str, bad: Option<String>, r: &mut TheoremReport| {
        r.assert(name, bad.is_none(), bad.unwrap_or_default());
    };
    let find_x = |nt: &super::NaturalTransformation| {
        xt.core()
            .iter()
            .map(|&b| nt.component(b).expect("validated"))
            .find(|&m| !xt.is_iso(m))
            .map(|m| x.morphism_label(m))
    };
    first_bad("every epsilon component is iso", find_x(l.epsilon()), &mut r);
    first_bad("every zeta component is iso", find_x(l.zeta()), &mut r);
    for (name, nt) in [("theta", l.theta()), ("eta", l.eta())] {
        let comps: Vec<MorphismId> = ct.core().iter().map(|&a| nt.component(a).expect("validated")).collect();
        let not_iso = comps
            .iter()
            .find(|&&m| l.f().mor(m).is_none_or(|fm| !xt.is_iso(fm)))
            .map(|&m| c.morphism_label(m));
        first_bad(&format!("F({name}) is iso at every core object"), not_iso, &mut r);
        let not_bi = comps
            .iter()
            .find(|&&m| !(ct.is_mono(m) && ct.is_epi(m)))
            .map(|&m| c.morphism_label(m));
        first_bad(&format!("every {name} component is a bimorphism"), not_bi, &mut r);
    }
    let (h_full, h_faithful) = full_and_faithful(l.h());
    r.assert("H is fully faithful", h_full.holds && h_faithful.holds, "");
    let props = functor_properties(l.f())?;
    if props.preserves_pullbacks.holds {
        r.assert(
            "F preserves pullbacks, hence monos",
            props.preserves_monos.holds,
            witness_detail(&props.preserves_monos.witness),
        );
    }
    r.assert("F preserves epis", props.preserves_epis.holds, witness_detail(&props.preserves_epis.witness));
    if props.faithful.holds {
        r.assert("F reflects monos", props.reflects_monos.holds, witness_detail(&props.reflects_monos.witness));
        r.assert("F reflects epis", props.reflects_epis.holds, witness_detail(&props.reflects_epis.witness));
    }
    let balanced = check_condition(ct, ConditionTag::Balanced)?;
    if balanced.holds {
        let eq = is_equivalence(l.f());
        r.assert("C balanced, so F is an equivalence", eq.holds(), "");
    } else {
        r.note(format!("C is not balanced: {}", witness_detail(&balanced.witness)));
    }
    Ok(r)
}
