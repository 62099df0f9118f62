use finkat::corpus::{finpreord_localization, free_basepoint_adjunction, pointed_finpreord_localization, resolve};
use finkat::functors::{
    check_sle_hypotheses, is_faithful_essential_localization, validate_adjunction, verify_preservation_theorems,
};
use finkat::report::Outcome;

#[test]
fn triples_are_faithful_essential_localizations() {
    for key in ["finset:2,4", "semilattice:B2", "semilattice:chain3", "terminal", "arrow", "finpreord:2,4", "pointed-finpreord:2,4"] {
        let l = resolve(key).unwrap().triple.expect("triple");
        let r = is_faithful_essential_localization(&l).unwrap();
        assert_eq!(r.outcome, Outcome::Pass, "{r}");
    }
}

#[test]
fn preservation_theorems_hold_on_preorders() {
    for l in [finpreord_localization(2, 4).unwrap(), pointed_finpreord_localization(2, 4).unwrap()] {
        for r in verify_preservation_theorems(&l).unwrap() {
            assert_eq!(r.outcome, Outcome::Pass, "{r}");
        }
    }
}

#[test]
fn free_basepoint_is_an_adjunction_but_not_a_localization() {
    let adj = free_basepoint_adjunction(2, 4).unwrap();
    assert!(validate_adjunction(&adj).is_valid());
    let v = check_sle_hypotheses(&adj).unwrap();
    assert!(!v.holds);
}
