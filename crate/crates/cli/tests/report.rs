use finkat::report::{Outcome, TheoremReport};
use finkat_cli::report::Section;
use finkat_cli::Report;

fn theorem(outcome: Outcome) -> Section {
    let mut t = TheoremReport::new("t", "s");
    match outcome {
        Outcome::Pass => {
            t.assert("a", true, "");
        }
        Outcome::Fail => {
            t.assert("a", false, "witness");
        }
        Outcome::NotApplicable => {
            t.hypothesis("h", false, "");
        }
    }
    Section::Theorem(t)
}

fn summarized(outcomes: &[Outcome]) -> Report {
    let mut r = Report::new(vec!["verify".into()]);
    r.results = outcomes.iter().map(|&o| theorem(o)).collect();
    r.summarize();
    r
}

#[test]
fn exit_status_follows_the_worst_outcome() {
    use Outcome::*;
    let cases = [
        (vec![Pass], Pass, 0),
        (vec![NotApplicable], NotApplicable, 0),
        (vec![Pass, NotApplicable], Pass, 0),
        (vec![Fail], Fail, 1),
        (vec![Pass, Fail, NotApplicable], Fail, 1),
    ];
    for (outcomes, overall, code) in cases {
        let r = summarized(&outcomes);
        assert_eq!(r.outcome, Some(overall), "{outcomes:?}");
        assert_eq!(r.exit_code(), code, "{outcomes:?}");
    }
}

#[test]
fn failing_report_renders_its_witness() {
    let r = summarized(&[Outcome::Fail]);
    let text = r.render_text();
    assert!(text.contains("[FAIL] assert a: witness"), "{text}");
    assert!(text.ends_with("outcome: FAIL\n"), "{text}");
}

#[test]
fn computations_have_no_outcome() {
    let mut r = Report::new(vec!["check".into()]);
    r.summarize();
    assert_eq!(r.outcome, None);
    assert_eq!(r.exit_code(), 0);
}
