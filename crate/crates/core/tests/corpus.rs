use finkat::corpus::{catalog, resolve, verify_condition_matrix};
use finkat::essentials::{check_condition, ConditionTag};
use finkat::kernel::validate;
use finkat::report::Outcome;

#[test]
fn catalog_verdicts_match() {
    for spec in catalog() {
        let item = resolve(&spec.key()).unwrap();
        for e in &spec.expected {
            let v = check_condition(&item.tier, e.condition).unwrap();
            assert_eq!(v.holds, e.holds, "{} {}", spec.key(), e.condition);
            if let Some(w) = &e.witness {
                assert_eq!(&v.witness.unwrap().labels[0], w, "{}", spec.key());
            }
        }
    }
    let r = verify_condition_matrix(&catalog()).unwrap();
    assert_eq!(r.outcome, Outcome::Pass, "{r}");
}

#[test]
fn all_condition_tags_run_on_every_small_entry() {
    for key in ["terminal", "arrow", "discrete:3", "semilattice:chain3", "pointed-finset:1,2"] {
        let item = resolve(key).unwrap();
        for tag in ConditionTag::ALL {
            check_condition(&item.tier, tag).unwrap();
        }
    }
}

#[test]
fn explicit_builders_pass_validation() {
    for key in ["semilattice:B2", "semilattice:chain4", "ab", "terminal", "arrow", "discrete:3"] {
        let item = resolve(key).unwrap();
        let table = item.table.expect("explicit table");
        assert!(validate(table.as_ref()).is_valid(), "{key}");
    }
}

#[test]
fn claimed_closure_holds() {
    for key in ["finset:2,4", "pointed-finset:2,4", "pointed-initial:2,4", "finpreord:2,4", "pointed-finpreord:2,4", "semilattice:B2"] {
        let item = resolve(key).unwrap();
        assert!(item.tier.pullback_closed(), "{key}");
    }
    assert!(resolve("finpreord:2,4").unwrap().tier.pushout_closed());
}

#[test]
fn bound_violations_are_rejected() {
    assert!(resolve("finset:2,3").is_err());
    assert!(resolve("finpreord:2,3").is_err());
    assert!(resolve("semilattice:chain0").is_err());
}
