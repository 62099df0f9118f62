//! Acceptance criteria. Each prints one PASS/FAIL line with its time budget.
//! Run with `cargo test -p finkat --test acceptance -- --nocapture`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use finkat::corpus::{
    catalog, finpreord_localization, finset_tier, pointed_finpreord_localization, resolve, to_terminal,
    verify_condition_matrix,
};
use finkat::envelopes::{
    envelope_via_unit, injective_envelopes_of, injective_objects, projective_objects, verify_injective_envelopes,
    verify_projective_covers, verify_semilattice_example,
};
use finkat::essentials::{check_condition, is_essential_mono, is_pb_stable_essential_mono, ConditionTag};
use finkat::functors::is_equivalence;
use finkat::kernel::{Category, ConcreteCategory, ObjectId};
use finkat::report::{Outcome, TheoremReport};
use finkat::spectral::{
    induced_functor, spec_build, verify_bimorphism_classes, verify_fraction_equivalence, verify_self_duality,
    DEFAULT_SPAN_CAP,
};

type Check = Result<(), String>;

fn ensure(ok: bool, what: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn passes(r: finkat::Result<TheoremReport>) -> Check {
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.outcome == Outcome::Pass, format!("{}: {}", r.theorem, r.outcome))
}

fn semilattice_b2() -> Check {
    let tier = resolve("semilattice:B2").unwrap().tier;
    let c = tier.cat();
    let ms = tier.core_morphisms();
    ensure(ms.len() == 9, format!("{} morphisms", ms.len()))?;
    for &m in &ms {
        ensure(is_pb_stable_essential_mono(&tier, m).unwrap().holds, format!("{} not pb-stable", c.morphism_label(m)))?;
    }
    let spec = spec_build(&tier, DEFAULT_SPAN_CAP).map_err(|e| e.to_string())?;
    let core = tier.core();
    for &a in core {
        for &b in core {
            ensure(spec.hom_classes(a, b) == Some(1), "a hom-set of fractions is not a singleton")?;
        }
    }
    ensure(is_equivalence(&to_terminal(spec.tier())).holds(), "fractions not equivalent to the terminal category")?;
    let top: Vec<ObjectId> = core.iter().copied().filter(|&t| core.iter().all(|&a| c.hom_size(a, t) == 1)).collect();
    ensure(injective_objects(&tier).unwrap() == top, "injectives are not the top element")?;
    for &a in core {
        ensure(injective_envelopes_of(&tier, a).unwrap() == c.hom(a, top[0]).to_vec(), "envelope is not the map to the top")?;
    }
    passes(verify_semilattice_example(&tier, DEFAULT_SPAN_CAP))
}

fn finset_census() -> Check {
    let tier = finset_tier(3, 9).unwrap();
    let sets = ConcreteCategory::sets(9).unwrap();
    let library: Vec<_> = tier
        .core_codomain_morphisms()
        .into_iter()
        .filter(|&m| tier.is_mono(m) && is_essential_mono(&tier, m).unwrap())
        .collect();
    ensure(library == brute_finset_essential_monos(&tier, &sets), "library and brute census differ")?;
    ensure(library.len() == 11, format!("census of {}", library.len()))?;
    let non_iso: Vec<String> = library.iter().filter(|&&m| !tier.is_iso(m)).map(|&m| tier.cat().morphism_label(m)).collect();
    ensure(non_iso == ["0 -> 1 []"], format!("non-isos {non_iso:?}"))
}

fn condition_matrix() -> Check {
    for spec in catalog() {
        let item = resolve(&spec.key()).unwrap();
        for e in &spec.expected {
            let v = check_condition(&item.tier, e.condition).map_err(|e| e.to_string())?;
            ensure(v.holds == e.holds, format!("{} {}", spec.key(), e.condition))?;
            if let Some(w) = &e.witness {
                let got = v.witness.map(|w| w.labels[0].clone());
                ensure(got.as_ref() == Some(w), format!("{} {} witness {got:?}", spec.key(), e.condition))?;
            }
        }
    }
    passes(verify_condition_matrix(&catalog()))
}

fn preorder_fractions() -> Check {
    let l = finpreord_localization(2, 4).unwrap();
    let tier = l.c();
    let p = ConcreteCategory::preorders(4).unwrap();
    for m in tier.core_morphisms() {
        let f = p.function(m);
        let bijective = is_injective(&f) && is_surjective(&f, p.size(tier.cat().cod(m)));
        let stable = is_pb_stable_essential_mono(tier, m).unwrap().holds;
        let fm = l.f().mor(m).ok_or("F undefined on a core morphism")?;
        ensure(stable == bijective && bijective == l.x().is_iso(fm), format!("{} stable={stable}", tier.cat().morphism_label(m)))?;
    }
    let spec = spec_build(tier, DEFAULT_SPAN_CAP).map_err(|e| e.to_string())?;
    for &a in tier.core() {
        for &b in tier.core() {
            let want = p.size(b).pow(p.size(a) as u32);
            ensure(spec.hom_classes(a, b) == Some(want), format!("hom {a:?} {b:?} has {:?} classes", spec.hom_classes(a, b)))?;
        }
    }
    let fbar = induced_functor(&spec, l.f()).map_err(|e| e.to_string())?;
    ensure(is_equivalence(&fbar).holds(), "induced functor is not an equivalence")?;
    passes(verify_fraction_equivalence(&l, DEFAULT_SPAN_CAP))
}

fn preorder_self_duality() -> Check {
    let l = finpreord_localization(2, 4).unwrap();
    let tier = l.c();
    ensure(tier.pushout_closed(), "not pushout-closed")?;
    passes(verify_bimorphism_classes(&l))?;
    passes(verify_self_duality(&l, DEFAULT_SPAN_CAP))?;
    let op = tier.opposite();
    for m in tier.core_morphisms() {
        let st = is_pb_stable_essential_mono(tier, m).unwrap().holds;
        let bi = tier.is_mono(m) && tier.is_epi(m);
        let st_op = is_pb_stable_essential_mono(&op, m).unwrap().holds;
        ensure(st == bi && bi == st_op, format!("{}: {st} {bi} {st_op}", tier.cat().morphism_label(m)))?;
    }
    Ok(())
}

fn envelopes_and_covers() -> Check {
    let pointed = pointed_finpreord_localization(2, 4).unwrap();
    ensure(check_condition(pointed.x(), ConditionTag::MonoSplit).unwrap().holds, "mono-split fails in X")?;
    for &a in pointed.c().core() {
        let cert = envelope_via_unit(&pointed, a).map_err(|e| e.to_string())?;
        ensure(cert.is_valid(), format!("certificate for {} invalid", cert.object_label))?;
    }
    passes(verify_injective_envelopes(&pointed, DEFAULT_SPAN_CAP))?;
    let pp = ConcreteCategory::pointed_preorders(4).unwrap();
    let brute = injective_carriers(&pp, pointed.c().core(), true, true);
    ensure(injective_objects(pointed.c()).unwrap() == brute, "injectives differ from brute force")?;
    ensure(brute.iter().all(|&o| pp.carrier(o).is_indiscrete()), "an injective is not indiscrete")?;

    let plain = finpreord_localization(2, 4).unwrap();
    let r = verify_injective_envelopes(&plain, DEFAULT_SPAN_CAP).map_err(|e| e.to_string())?;
    ensure(r.outcome == Outcome::NotApplicable, format!("envelopes on unpointed preorders: {}", r.outcome))?;
    let failed: Vec<_> = r.hypotheses.iter().filter(|h| !h.passed).collect();
    ensure(failed.len() == 1 && failed[0].detail.starts_with("0 -> 1"), "missing the 0 -> 1 witness")?;
    passes(verify_projective_covers(&plain, DEFAULT_SPAN_CAP))?;
    let p = ConcreteCategory::preorders(4).unwrap();
    let discrete: Vec<ObjectId> = plain.c().core().iter().copied().filter(|&o| p.carrier(o).is_discrete()).collect();
    ensure(projective_objects(plain.c()).unwrap() == discrete, "projectives are not the discrete preorders")?;
    ensure(projective_carriers(&p, plain.c().core(), true, false) == discrete, "brute projectives differ")
}

fn corpus_sweep() -> Check {
    for key in CORPUS {
        let item = resolve(key).unwrap();
        let tier = &item.tier;
        let v = duality_violations(tier);
        ensure(v.is_empty(), format!("{key}: {v:?}"))?;
        if tier.pullback_closed() {
            let n = tier.core_morphisms().len();
            let stride = (n * n / 4000).max(1);
            for (p, q) in core_cospans(tier, stride) {
                pullback_uniqueness(tier, p, q).map_err(|e| format!("{key}: {e}"))?;
            }
        }
        if let Some(spec) = spec_of(key) {
            for &a in tier.core() {
                for &b in tier.core() {
                    let all = spans(&spec, a, b);
                    let sample: Vec<_> = all.iter().copied().step_by(all.len().div_ceil(30).max(1)).collect();
                    let v = span_relation_violations(&spec, &sample);
                    ensure(v.is_empty(), format!("{key}: {v:?}"))?;
                }
            }
            let t = spec.table();
            let ms: Vec<_> = t.morphisms().collect();
            for &k1 in &ms {
                for &k2 in ms.iter().filter(|&&k| t.dom(k) == t.cod(k1)) {
                    let v = composition_violations(&spec, k1, k2);
                    ensure(v.is_empty(), format!("{key}: {v:?}"))?;
                }
            }
        }
        if let Some(l) = &item.triple {
            let v = triangle_violations(l);
            ensure(v.is_empty(), format!("{key}: {v:?}"))?;
            remarks_pass(l).map_err(|e| format!("{key}: {e}"))?;
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Check); 7] = [
        ("Boolean semilattice B2", 1, semilattice_b2),
        ("FinSet essential mono census", 5, finset_census),
        ("condition matrix over the catalog", 10, condition_matrix),
        ("fractions of finite preorders", 60, preorder_fractions),
        ("bimorphisms and self-duality", 120, preorder_self_duality),
        ("injective envelopes and projective covers", 60, envelopes_and_covers),
        ("corpus sweep", 300, corpus_sweep),
    ];
    println!();
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(budget), format!("took {elapsed:.2?}, budget {budget} s"))
        });
        match result {
            Ok(()) => println!("PASS criterion {}: {name} ({elapsed:.2?} / {budget} s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({elapsed:.2?} / {budget} s): {e}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
