use hvir_core::lab::{check_ids, run_check, run_suite, LabConfig, Status, REPORT_SCHEMA};
use hvir_core::CoreError;

fn fast() -> LabConfig {
    LabConfig {
        samples: 20,
        radius: 1,
        ..LabConfig::default()
    }
}

#[test]
fn registry_ids_are_unique_and_plentiful() {
    let ids = check_ids();
    let set: std::collections::BTreeSet<_> = ids.iter().collect();
    assert_eq!(set.len(), ids.len());
    assert!(ids.len() >= 20);
    for id in ["ID-316-DET", "ID-317-SOLVE", "ID-331-FACTOR", "ALG-JACOBI", "LAT-L21"] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn unknown_id_is_rejected_before_running() {
    let err = run_suite(&fast(), &["ALG-JACOBI".into(), "ID-999".into()]).unwrap_err();
    assert!(matches!(err, CoreError::UnknownCheck(ref id) if id == "ID-999"));
}

#[test]
fn same_seed_gives_identical_reports() {
    let ids: Vec<String> = ["ALG-JACOBI", "ALG-ANTISYM", "LAT-DEG", "ID-316-DET"].map(String::from).to_vec();
    let a = run_suite(&fast(), &ids).unwrap().to_json();
    let b = run_suite(&fast(), &ids).unwrap().to_json();
    assert_eq!(a, b);
    assert!(a.contains(REPORT_SCHEMA));
    assert!(!a.contains("elapsed_ms"));
}

#[test]
fn timings_are_opt_in() {
    let cfg = LabConfig { timings: true, ..fast() };
    let r = run_check(&cfg, "LAT-CONE").unwrap();
    assert!(r.elapsed_ms.is_some());
}

#[test]
fn reports_are_sorted_and_counted() {
    let ids: Vec<String> = ["LAT-L23", "ALG-GRADING", "MOD-SIMPLE"].map(String::from).to_vec();
    let s = run_suite(&fast(), &ids).unwrap();
    let got: Vec<_> = s.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(got, ["ALG-GRADING", "LAT-L23", "MOD-SIMPLE"]);
    assert_eq!(s.summary.pass, 3);
    assert!(s.all_pass());
}

#[test]
fn identity_replays_pass() {
    for id in ["ID-311-PBW", "ID-312-DERIVE", "ID-313-SPECIALIZE", "ID-310-ANSATZ", "ID-338-MATRIX"] {
        let r = run_check(&fast(), id).unwrap();
        assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.witness);
    }
}

#[test]
fn specialization_reports_the_sign_resolution() {
    let r = run_check(&fast(), "ID-313-SPECIALIZE").unwrap();
    assert!(r.notes.iter().any(|n| n.contains("resolved to +")));
}

#[test]
fn rank_one_lemma21_determinants_are_reported() {
    let r = run_check(&fast(), "LAT-L21").unwrap();
    assert_eq!(r.status, Status::Fail);
    let w = r.witness.unwrap();
    assert!(w.contains("(n, k) = (1, 1): 2"));
    assert!(!w.contains("(n, k) = (2,"));
}
