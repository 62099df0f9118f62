use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn finkat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finkat"))
        .args(args)
        .env_remove("FINKAT_SPAN_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

/// Runs with `--json` into a temporary file and returns the exit status and report.
fn json(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    let p = path.display().to_string();
    all.extend(["--json", &p]);
    let out = finkat(&all);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("no report: {}", String::from_utf8_lossy(&out.stderr)));
    let value: Value = serde_json::from_str(&text).unwrap();
    let compiled = schema();
    if let Err(errors) = compiled.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("report does not match the schema: {msgs:?}");
    }
    (out.status.code().unwrap(), value)
}

#[test]
fn semilattice_example_passes() {
    let (code, r) = json(&["verify", "example-1.1", "--corpus", "semilattice:B2"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "PASS");
    let theorem = &r["results"][0];
    assert!(theorem["assertions"].as_array().unwrap().iter().all(|a| a["passed"] == true));
    let inj = theorem["assertions"].as_array().unwrap().iter().find(|a| a["name"].as_str().unwrap().contains("only injective")).unwrap();
    assert_eq!(inj["detail"], "1");
}

#[test]
fn finset_is_balanced() {
    let (code, r) = json(&["check", "balanced", "--corpus", "finset:3,9"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"][0]["holds"], true);
    assert_eq!(r["results"][0]["condition"], "BALANCED");
    assert_eq!(r["outcome"], Value::Null);
}

#[test]
fn injective_envelopes_do_not_apply_to_unpointed_preorders() {
    let (code, r) = json(&["verify", "7.1a", "--corpus", "finpreord-unpointed"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "NOT_APPLICABLE");
    let failed: Vec<&Value> = r["results"][0]["hypotheses"].as_array().unwrap().iter().filter(|h| h["passed"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["detail"].as_str().unwrap().starts_with("0 -> 1"), "{}", failed[0]);
}

#[test]
fn projective_covers_pass_on_unpointed_preorders() {
    let (code, r) = json(&["verify", "7.1b", "--corpus", "finpreord", "--core", "2", "--ambient", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "PASS");
}

#[test]
fn condition_matrix_passes() {
    let (code, r) = json(&["verify", "6.3"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "PASS");
}

#[test]
fn check_all_on_a_builder_file() {
    let (code, r) = json(&["check", "all", &data("finset.fincat")]);
    assert_eq!(code, 0);
    let verdicts: Vec<(String, bool)> = r["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| (v["condition"].as_str().unwrap().to_string(), v["holds"].as_bool().unwrap()))
        .collect();
    assert_eq!(verdicts.len(), 6);
    assert!(verdicts.contains(&("MONO_SPLIT".into(), false)));
    assert!(verdicts.contains(&("BALANCED".into(), true)));
}

#[test]
fn analyze_an_explicit_file() {
    let (code, r) = json(&["analyze", &data("arrow.fincat")]);
    assert_eq!(code, 0);
    let rows = r["results"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let f = rows.iter().find(|row| row["morphism"].as_str().unwrap().starts_with("f:")).unwrap();
    assert_eq!(f["mono"], true);
    assert_eq!(f["epi"], true);
    assert_eq!(f["iso"], false);
    assert_eq!(f["pb_stable_essential_mono"], true);
}

#[test]
fn spec_of_the_boolean_lattice_is_codiscrete() {
    let (code, r) = json(&["spec", "--corpus", "semilattice:B2"]);
    assert_eq!(code, 0);
    let homs = r["results"][0]["homs"].as_array().unwrap();
    assert_eq!(homs.len(), 16);
    assert!(homs.iter().all(|h| h["classes"] == 1));
}

#[test]
fn corpus_listing_and_entry() {
    let (code, r) = json(&["corpus"]);
    assert_eq!(code, 0);
    assert!(r["results"][0]["catalog"].as_array().unwrap().len() >= 5);
    let (code, r) = json(&["corpus", "finpreord", "--core", "1", "--ambient", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"][0]["name"], "finpreord:1,1");
    assert_eq!(r["results"][0]["core"].as_array().unwrap().len(), 2);
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "4.9", "--corpus", "finpreord:1,1"];
    let (_, mut a) = json(&args);
    let (_, mut b) = json(&args);
    a["timing"] = Value::Null;
    b["timing"] = Value::Null;
    // The echoed --json path differs between runs.
    a["command"] = Value::Null;
    b["command"] = Value::Null;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(stdout(&finkat(&args)), stdout(&finkat(&args)));
}

#[test]
fn exit_status_two_on_input_errors() {
    for args in [
        vec!["analyze", &data("missing.fincat")],
        vec!["verify", "5.1", &data("arrow.fincat")],
        vec!["verify", "9.9", "--corpus", "arrow"],
        vec!["check", "nonsense", "--corpus", "arrow"],
        vec!["analyze"],
        vec!["analyze", "--corpus", "no-such-entry"],
        vec!["frobnicate"],
        vec!["analyze", "/nonexistent.fincat"],
    ] {
        let out = finkat(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn parse_errors_report_line_and_column() {
    let out = finkat(&["analyze", &data("missing.fincat")]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("missing.fincat:4:5: missing composition entry `comp e . e = ?`"), "{err}");
}

#[test]
fn span_cap_overflow_is_an_engine_error() {
    let out = finkat(&["verify", "5.1", "--corpus", "pointed-finpreord", "--span-cap", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("above the cap"), "{err}");
}

#[test]
fn span_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_finkat"))
        .args(["spec", "--corpus", "finset:2,4"])
        .env("FINKAT_SPAN_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_finkat"))
        .args(["spec", "--corpus", "finset:2,4", "--span-cap", "1000"])
        .env("FINKAT_SPAN_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn render_round_trips_through_the_binary() {
    let out = finkat(&["render", "--corpus", "semilattice:B2"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b2.fincat");
    std::fs::write(&path, stdout(&out)).unwrap();
    let again = finkat(&["render", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), stdout(&again));
    let (code, r) = json(&["verify", "example-1.1", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "PASS");
}
