mod common;

use std::sync::{Arc, OnceLock};

use common::*;
use finkat::corpus::resolve;
use finkat::kernel::{Category, Tier};
use finkat::spectral::SpecCategory;
use proptest::prelude::*;

fn tiers() -> &'static Vec<(&'static str, Arc<Tier>)> {
    static TIERS: OnceLock<Vec<(&'static str, Arc<Tier>)>> = OnceLock::new();
    TIERS.get_or_init(|| CORPUS.iter().map(|&k| (k, resolve(k).unwrap().tier)).collect())
}

fn specs() -> &'static Vec<(&'static str, SpecCategory)> {
    static SPECS: OnceLock<Vec<(&'static str, SpecCategory)>> = OnceLock::new();
    SPECS.get_or_init(|| {
        ["semilattice:B2", "semilattice:chain3", "finset:2,4", "pointed-finset:2,4", "finpreord:2,4", "pointed-finpreord:2,4", "arrow"]
            .into_iter()
            .map(|k| (k, spec_of(k).unwrap_or_else(|| panic!("{k} has a category of fractions"))))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn mono_and_epi_swap_under_opposite(entry in 0usize..CORPUS.len(), pick in any::<prop::sample::Index>()) {
        let (key, tier) = &tiers()[entry];
        let ms = tier.core_morphisms();
        let f = ms[pick.index(ms.len())];
        let op = tier.opposite();
        prop_assert_eq!(tier.is_mono(f), op.is_epi(f), "{}", key);
        prop_assert_eq!(tier.is_epi(f), op.is_mono(f), "{}", key);
        prop_assert_eq!(tier.is_iso(f), op.is_iso(f), "{}", key);
    }

    #[test]
    fn pullback_apex_is_unique_up_to_unique_iso(entry in 0usize..CORPUS.len(), z in any::<prop::sample::Index>(), p in any::<prop::sample::Index>(), q in any::<prop::sample::Index>()) {
        let (key, tier) = &tiers()[entry];
        let c = tier.cat();
        let z = tier.core()[z.index(tier.core().len())];
        let legs: Vec<_> = tier.core().iter().flat_map(|&a| c.hom(a, z).to_vec()).collect();
        let (p, q) = (legs[p.index(legs.len())], legs[q.index(legs.len())]);
        prop_assert_eq!(pullback_uniqueness(tier, p, q), Ok(()), "{}", key);
    }

    #[test]
    fn span_relation_is_an_equivalence(entry in 0usize..7, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (key, spec) = &specs()[entry];
        let core = spec.source().core();
        let (a, b) = (core[a.index(core.len())], core[b.index(core.len())]);
        let all = spans(spec, a, b);
        let sample: Vec<_> = all.iter().copied().step_by(all.len().div_ceil(40).max(1)).collect();
        prop_assert_eq!(span_relation_violations(spec, &sample), Vec::<String>::new(), "{}", key);
    }

    #[test]
    fn composition_ignores_representatives(entry in 0usize..7, first in any::<prop::sample::Index>(), second in any::<prop::sample::Index>()) {
        let (key, spec) = &specs()[entry];
        let t = spec.table();
        let ms: Vec<_> = t.morphisms().collect();
        let k1 = ms[first.index(ms.len())];
        let next: Vec<_> = ms.iter().copied().filter(|&k| t.dom(k) == t.cod(k1)).collect();
        let k2 = next[second.index(next.len())];
        prop_assert_eq!(composition_violations(spec, k1, k2), Vec::<String>::new(), "{}", key);
    }
}

#[test]
fn built_categories_report_no_composition_defects() {
    for (key, spec) in specs() {
        assert!(spec.violations().is_empty(), "{key}: {:?}", spec.violations());
    }
}

#[test]
fn triangle_identities_hold_for_every_triple() {
    for key in CORPUS {
        if let Some(l) = resolve(key).unwrap().triple {
            assert_eq!(triangle_violations(&l), Vec::<String>::new(), "{key}");
        }
    }
}

#[test]
fn localization_remarks_hold_for_every_triple() {
    for key in CORPUS {
        if let Some(l) = resolve(key).unwrap().triple {
            remarks_pass(&l).unwrap_or_else(|r| panic!("{key}: {r}"));
        }
    }
}
