//! The twelve acceptance criteria, evaluated on one default run of the full
//! suite through the command line. Prints one line per criterion.

use std::time::{Duration, Instant};

use hvir::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use hvir_core::lab::{run_check, LabConfig};
use serde_json::Value;

const SUITE_LIMIT: Duration = Duration::from_secs(60);
const DET_LIMIT: Duration = Duration::from_secs(10);
const SOLVE_LIMIT: Duration = Duration::from_secs(30);
const MIN_SAMPLES: u64 = 100;
const BOX_RADIUS: u64 = 3;
const MIN_PASS_ENTRIES: u64 = 20;

fn run_cli(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("hvir").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&err).into_owned())
}

fn full_suite(path: &std::path::Path) -> (i32, Duration, Vec<u8>) {
    let start = Instant::now();
    let (code, err) = run_cli(&["check", "--ids", "all", "--output", path.to_str().unwrap()]);
    let elapsed = start.elapsed();
    assert!(code == EXIT_PASS || code == EXIT_FAIL, "suite run failed: {err}");
    (code, elapsed, std::fs::read(path).unwrap())
}

fn elapsed(id: &str) -> Duration {
    let cfg = LabConfig { timings: true, ..LabConfig::default() };
    Duration::from_millis(run_check(&cfg, id).unwrap().elapsed_ms.unwrap())
}

struct Criterion {
    label: &'static str,
    ids: &'static [&'static str],
    extra: Option<(bool, String)>,
}

fn status<'a>(report: &'a Value, id: &str) -> (&'a str, Option<&'a str>) {
    let c = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("{id} missing from the report"));
    (c["status"].as_str().unwrap(), c["witness"].as_str())
}

#[test]
fn acceptance_criteria() {
    let dir = std::env::temp_dir();
    let (first_path, second_path) = (dir.join("hvir-acceptance-1.json"), dir.join("hvir-acceptance-2.json"));
    let (code, first_time, first) = full_suite(&first_path);
    let (second_code, second_time, second) = full_suite(&second_path);
    let report: Value = serde_json::from_slice(&first).unwrap();
    let cfg = &report["config"];
    assert_eq!(cfg["samples"].as_u64(), Some(MIN_SAMPLES));
    assert_eq!(cfg["radius"].as_u64(), Some(BOX_RADIUS));
    assert_eq!(cfg["rank"].as_u64(), Some(2));

    let pass_entries = report["summary"]["pass"].as_u64().unwrap();
    let expected_code = if report["summary"]["fail"] == 0 && report["summary"]["undecidable"] == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let usage = run_cli(&["check", "--ids", "ID-999"]).0;
    let contract = code == expected_code && second_code == code && usage == EXIT_USAGE;
    let slowest = first_time.max(second_time);
    let (det, solve) = (elapsed("ID-316-DET"), elapsed("ID-317-SOLVE"));

    let criteria = [
        Criterion {
            label: "ID-316-DET",
            ids: &["ID-316-DET"],
            extra: Some((det <= DET_LIMIT, format!("{det:?} within {DET_LIMIT:?}"))),
        },
        Criterion {
            label: "ID-317-SOLVE",
            ids: &["ID-317-SOLVE"],
            extra: Some((solve <= SOLVE_LIMIT, format!("{solve:?} within {SOLVE_LIMIT:?}"))),
        },
        Criterion { label: "ID-311-PBW / ID-312", ids: &["ID-311-PBW", "ID-312-DERIVE", "ID-313-SPECIALIZE"], extra: None },
        Criterion { label: "ID-310-ANSATZ", ids: &["ID-310-ANSATZ"], extra: None },
        Criterion { label: "ID-322/324-DERIVE", ids: &["ID-322-DERIVE", "ID-324-DERIVE"], extra: None },
        Criterion { label: "ID-331-FACTOR", ids: &["ID-331-FACTOR"], extra: None },
        Criterion { label: "ID-333-CLOSED", ids: &["ID-333-CLOSED"], extra: None },
        Criterion { label: "ID-335-LEMMA34", ids: &["ID-335-LEMMA34", "ID-338-MATRIX"], extra: None },
        Criterion { label: "ALG-JACOBI", ids: &["ALG-ANTISYM", "ALG-JACOBI"], extra: None },
        Criterion {
            label: "MOD-AXIOM",
            ids: &["MOD-AXIOM-AAB", "MOD-AXIOM-APRIME", "MOD-AXIOM-BPRIME", "MOD-SIMPLE", "MOD-ISO"],
            extra: None,
        },
        Criterion { label: "LAT-BASIS", ids: &["LAT-L21", "LAT-L23", "ALG-NESTED"], extra: None },
        Criterion {
            label: "CLI-DETERMINISM",
            ids: &[],
            extra: Some((
                first == second && contract && slowest <= SUITE_LIMIT && pass_entries >= MIN_PASS_ENTRIES,
                format!(
                    "identical reports: {}, exit {code} (ID-999 → {usage}), slowest run {slowest:?} within {SUITE_LIMIT:?}, {pass_entries} pass entries",
                    first == second
                ),
            )),
        },
    ];

    let mut failed = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        let mut ok = true;
        let mut detail = Vec::new();
        for id in c.ids {
            let (s, w) = status(&report, id);
            if s != "pass" {
                ok = false;
                detail.push(format!("{id} {s}: {}", w.unwrap_or("")));
            }
        }
        if let Some((extra_ok, text)) = &c.extra {
            ok &= extra_ok;
            detail.push(text.clone());
        }
        let mark = if ok { "PASS" } else { "FAIL" };
        println!("[{mark}] {:>2}. {:<20} {}", i + 1, c.label, detail.join("; "));
        if !ok {
            failed.push(c.label);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
