use std::collections::BTreeMap;
use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn jacring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacring")).args(args).output().unwrap()
}

fn record(args: &[&str]) -> Value {
    let out = jacring(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    jacring(args).status.code().unwrap()
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(code(&["hilbert", "--fermat", "2", "4"]), 0);
    assert_eq!(code(&["hilbert", "--bogus"]), 2);
    assert_eq!(code(&["hilbert", "--poly", "x0^3 + x1^2"]), 2);
    assert_eq!(code(&["hilbert", "--poly", "x0^3 +* x1"]), 2);
    assert_eq!(code(&["hilbert", "--fermat", "2", "4", "--field", "12"]), 2);
    assert_eq!(code(&["hilbert"]), 2);
    assert_eq!(code(&["hilbert", "--fermat", "2", "4", "--ci", "2,2"]), 2);
    assert_eq!(code(&["hilbert", "--fermat", "2", "5", "--field", "5"]), 3);
    assert_eq!(code(&["wlp", "--poly", "x0^2*x2 - x1^3"]), 3);
    assert_eq!(code(&["min-witness", "--d", "4"]), 3);
    assert_eq!(code(&["hilbert", "--poly-file", "/nonexistent/curve.txt"]), 3);
    assert_eq!(code(&["y-membership", "--fermat", "2", "5", "--alpha", "x0^3"]), 3);
}

#[test]
fn records_carry_config_and_hash() {
    let a = record(&["hilbert", "--fermat", "2", "5"]);
    let b = record(&["--threads", "3", "hilbert", "--fermat", "2", "5"]);
    assert_eq!(a["config_hash"], b["config_hash"]);
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["config"]["source"]["kind"], "fermat");
    assert_eq!(
        a["payload"]["dims"],
        serde_json::json!([1, 3, 6, 10, 12, 12, 10, 6, 3, 1])
    );
    let c = record(&["hilbert", "--fermat", "2", "6"]);
    assert_ne!(a["config_hash"], c["config_hash"]);
}

#[test]
fn random_source_records_seed_and_primes() {
    let a = record(&["hilbert", "--random", "2", "4", "--seed", "9"]);
    assert_eq!(a["config"]["seed"], 9);
    assert_eq!(a["config"]["primes"], serde_json::json!([65537, 1000003]));
    let b = record(&["hilbert", "--random", "2", "4", "--seed", "10"]);
    assert_ne!(a["payload"]["ring"]["equation"], b["payload"]["ring"]["equation"]);
}

#[test]
fn csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rec.json");
    let out = jacring(&[
        "hilbert",
        "--fermat",
        "2",
        "4",
        "--csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,r_k,s_k"));
    assert_eq!(lines.nth(3), Some("3,7,10"));
    let rec: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(rec["payload"]["total"], 27);
}

#[test]
fn poly_file_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.txt");
    fs::write(&path, "x0^4 + x1^4 + x2^4\n").unwrap();
    let rec = record(&["pairing", "--poly-file", path.to_str().unwrap()]);
    assert_eq!(rec["payload"]["all_perfect"], true);
}

fn cells(path: &std::path::Path) -> BTreeMap<String, Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter_map(|l| serde_json::from_str::<Value>(l).ok())
        .map(|r| (r["config_hash"].as_str().unwrap().to_string(), r["payload"].clone()))
        .collect()
}

#[test]
fn resumed_survey_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = dir.path().join("fresh.jsonl");
    let resumed = dir.path().join("resumed.jsonl");
    let f = fresh.to_str().unwrap();
    let r = resumed.to_str().unwrap();

    let full = record(&[
        "survey",
        "--kind",
        "hilbert",
        "--jsonl",
        f,
        "--n-range",
        "1..2",
        "--d-range",
        "3..6",
    ]);
    assert_eq!(full["payload"]["cells"], 8);
    assert_eq!(full["payload"]["all_pass"], true);

    record(&[
        "survey",
        "--kind",
        "hilbert",
        "--jsonl",
        r,
        "--n-range",
        "1..2",
        "--d-range",
        "3..4",
    ]);
    let mut text = fs::read_to_string(&resumed).unwrap();
    text.push_str("{\"timestamp\": 1, \"trunc");
    fs::write(&resumed, text).unwrap();
    let again = record(&[
        "survey",
        "--kind",
        "hilbert",
        "--jsonl",
        r,
        "--n-range",
        "1..2",
        "--d-range",
        "3..6",
    ]);
    assert_eq!(again["payload"]["skipped"], 4);
    assert_eq!(again["payload"]["written"], 4);
    assert_eq!(cells(&fresh), cells(&resumed));

    let rerun = record(&[
        "survey",
        "--kind",
        "hilbert",
        "--jsonl",
        f,
        "--n-range",
        "1..2",
        "--d-range",
        "3..6",
    ]);
    assert_eq!(rerun["payload"]["written"], 0);
}

#[test]
fn survey_kinds_run() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, extra) in [
        ("star", vec!["--n-range", "2..3", "--d-range", "3..5"]),
        ("slp", vec!["--nvars-range", "1..2", "--a-range", "2..3"]),
        ("arith", vec!["--d-range", "3..10"]),
    ] {
        let path = dir.path().join(format!("{kind}.jsonl"));
        let mut args = vec!["survey", "--kind", kind, "--jsonl", path.to_str().unwrap()];
        args.extend(extra);
        let rec = record(&args);
        assert_eq!(rec["payload"]["all_pass"], true, "{kind}: {}", rec["payload"]);
    }
}

#[test]
fn every_subcommand_produces_a_payload() {
    let runs: [&[&str]; 14] = [
        &["pairing", "--ci", "2,3"],
        &["wlp", "--fermat", "2", "4"],
        &["slp", "--fermat", "2", "4", "--field", "q"],
        &["star", "--n", "2", "--d", "5"],
        &["socle-coeff", "--n", "2"],
        &["variation-max", "--fermat", "2", "4"],
        &[
            "variation-spectrum",
            "--fermat",
            "2",
            "5",
            "--samples",
            "20",
            "--xi",
            "x0^3*x1^2",
        ],
        &["min-witness", "--d", "6"],
        &["yukawa", "--fermat", "3", "5"],
        &["annihilator", "--fermat", "2", "4", "--alpha", "x0*x1"],
        &["fv-rank", "--fermat", "2", "5", "--p", "6", "--v", "1,-2,3"],
        &["y-membership", "--fermat", "2", "5", "--alpha", "x0*x1"],
        &["probe", "--fermat", "2", "5", "--samples", "5"],
        &["arith-check", "--d-range", "3..8"],
    ];
    for args in runs {
        let rec = record(args);
        assert!(rec["payload"].is_object(), "{args:?}");
    }
    let y = record(&["yukawa", "--fermat", "3", "5"]);
    assert_eq!(y["payload"]["rank"], 4);
    let m = record(&["min-witness", "--d", "6"]);
    assert_eq!(m["payload"]["rank"], 3);
    let s = record(&["socle-coeff", "--n", "2"]);
    assert_eq!(s["payload"]["expansion"], "6");
}
