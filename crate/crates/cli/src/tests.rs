use crate::{run, run_with, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use hvir_core::lab::{CheckSpec, LabConfig, Outcome};
use hvir_core::Result;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("hvir").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn call_with(checks: &[CheckSpec], args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("hvir").chain(args.iter().copied());
    let code = run_with(argv, checks, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn passing(_: &LabConfig) -> Result<Outcome> {
    Ok(Outcome::default())
}

fn failing(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    o.require(false, || "injected".into());
    Ok(o)
}

fn undecided(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    o.undecided("injected");
    Ok(o)
}

fn erroring(_: &LabConfig) -> Result<Outcome> {
    Err(hvir_core::CoreError::Precondition("injected".into()))
}

fn fixtures() -> Vec<CheckSpec> {
    vec![
        CheckSpec::new("FIX-PASS", "always passes", passing),
        CheckSpec::new("FIX-FAIL", "always fails", failing),
        CheckSpec::new("FIX-UNDECIDED", "never decides", undecided),
        CheckSpec::new("FIX-ERROR", "returns an error", erroring),
    ]
}

#[test]
fn compute_examples() {
    assert_eq!(call(&["compute", "bracket", "L 1,0", "L 0,1"]).1, "(β₂−β₁)·L[1,1]\n");
    assert_eq!(call(&["compute", "basis-lemma21", "--rank", "2", "-k", "1"]).1, "rows (2,1),(3,2), det=1\n");
    let act = call(&["compute", "act", "--family", "Aab", "--a", "0", "--b", "0", "--mu", "1,0", "--nu", "0,1"]);
    assert_eq!(act, (EXIT_PASS, "(β₂)·x[1,1]\n".to_string(), String::new()));
    assert_eq!(call(&["compute", "deg", "1,-2,3"]).1, "2\n");
    let l23 = call(&["compute", "basis-lemma23", "--mu", "0,3"]).1;
    assert!(l23.ends_with("rows (1,3),(1,4), det=1\n"), "{l23}");
}

#[test]
fn parse_errors_are_usage_errors_with_position() {
    let (code, out, err) = call(&["compute", "bracket", "L 1,0", "L 1,x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("position 5"), "{err}");
    assert_eq!(call(&["compute", "deg", "1;2"]).0, EXIT_USAGE);
    assert_eq!(call(&["compute", "basis-lemma23", "--mu", "3"]).0, EXIT_USAGE);
    assert_eq!(call(&["compute", "act", "--family", "Zab", "--mu", "1,0", "--nu", "0,1"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn unknown_check_id_is_a_usage_error() {
    let (code, out, err) = call(&["check", "--ids", "ID-999"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("ID-999"));
}

#[test]
fn exit_status_follows_the_worst_result() {
    let f = fixtures();
    assert_eq!(call_with(&f, &["check", "--ids", "FIX-PASS"]).0, EXIT_PASS);
    assert_eq!(call_with(&f, &["check", "--ids", "FIX-PASS,FIX-FAIL"]).0, EXIT_FAIL);
    assert_eq!(call_with(&f, &["check", "--ids", "FIX-UNDECIDED"]).0, EXIT_FAIL);
    assert_eq!(call_with(&f, &["check", "--ids", "FIX-ERROR"]).0, EXIT_FAIL);
    assert_eq!(call_with(&f, &["check", "--ids", "FIX-PASS,FIX-NOPE"]).0, EXIT_USAGE);
    assert_eq!(call_with(&f, &["check"]).0, EXIT_FAIL);
}

#[test]
fn failures_carry_witnesses_in_the_report() {
    let (code, json) = call_with(&fixtures(), &["check", "--output", "-"]);
    assert_eq!(code, EXIT_FAIL);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], "hvir-report/1");
    let checks = v["checks"].as_array().unwrap();
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["FIX-ERROR", "FIX-FAIL", "FIX-PASS", "FIX-UNDECIDED"]);
    for c in checks {
        assert_eq!(c["status"] != "pass", c.get("witness").is_some(), "{c}");
    }
    assert_eq!(v["summary"]["pass"], 1);
    assert_eq!(v["summary"]["fail"], 2);
    assert_eq!(v["summary"]["undecidable"], 1);
}

#[test]
fn unwritable_output_is_reported() {
    let (code, _, err) = call(&["check", "--ids", "LAT-DEG", "--output", "/nonexistent/dir/report.json"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot write"));
}

#[test]
fn report_file_is_deterministic() {
    let dir = std::env::temp_dir();
    let paths = [dir.join("hvir-det-a.json"), dir.join("hvir-det-b.json")];
    for p in &paths {
        let args = ["check", "--ids", "ALG-JACOBI,LAT-L23,ID-316-DET", "--seed", "7", "--output", p.to_str().unwrap()];
        assert_eq!(call(&args).0, EXIT_PASS);
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn timings_are_recorded_on_request() {
    let (_, json) = call_with(&fixtures(), &["check", "--ids", "FIX-PASS", "--timings", "--output", "-"]);
    assert!(json.contains("elapsed_ms"));
    let (_, json) = call_with(&fixtures(), &["check", "--ids", "FIX-PASS", "--output", "-"]);
    assert!(!json.contains("elapsed_ms"));
}
