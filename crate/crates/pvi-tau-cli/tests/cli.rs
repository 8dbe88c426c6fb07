//! End-to-end tests of the binary: exit codes, document shapes, cache
//! behavior.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pvi-tau"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pvi-tau-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn seq_emits_the_printed_seed() {
    let out = run(&["seq", "--family", "T", "-r", "3", "-m", "2", "-s", "1", "-N", "4", "--schedule", "prime:3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(doc["family"], "T");
    assert_eq!(doc["seed_scale"], "1/3");
    // T_2 = 5t^2 - 5t + 1, ascending
    assert_eq!(doc["polys"][1], serde_json::json!(["1", "-5", "5"]));
    assert_eq!(doc["polys"][2], serde_json::json!(["2", "-16", "51", "-70", "35"]));
    assert_eq!(doc["contents"][2], "1");
}

#[test]
fn seq_square_shift_s_family() {
    let out = run(&["seq", "--family", "S", "-r", "3", "-m", "2", "-s", "1", "-N", "2", "--schedule", "square-shift"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(doc["polys"][1], serde_json::json!(["-1", "12", "-30", "20"]));
}

#[test]
fn seq_rejects_bad_parameters() {
    let out = run(&["seq", "-r", "x", "-m", "2", "-s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["seq", "-r", "3", "-m", "2", "-s", "1", "--schedule", "prime:nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["seq", "-r", "3", "-m", "2", "-s", "1", "-N", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seq_reports_anomalies_without_failing() {
    // an exhausted table stops the run but seq still exits 0
    let out = run(&["seq", "-r", "3", "-m", "2", "-s", "1", "-N", "6", "--schedule", "table:5", "--seed-scale", "1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(doc["n"], 3);
    assert!(doc["anomalies"][0].as_str().unwrap().contains("exhausted"));
}

#[test]
fn verify_all_suites_pass_on_one_point() {
    let out = run(&["verify", "--suite", "all", "-r", "3", "-m", "2", "-s", "1", "-N", "3"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(doc["kind"], "verification");
    let checks = doc["checks"].as_array().expect("checks");
    assert!(checks.iter().all(|c| c["status"] != "nonzero"));
    // the collapse check must record the route statuses
    let collapse = checks.iter().find(|c| c["subject"] == "collapse").expect("collapse check");
    let detail = collapse["detail"].as_str().unwrap();
    assert!(detail.contains("uv=fails") && detail.contains("abc=degenerate"));
}

#[test]
fn verify_perturbation_is_a_counterexample() {
    let out = run(&[
        "verify", "--suite", "theorem-qn", "-r", "3", "-m", "2", "-s", "1", "-N", "1",
        "--perturb", "beta=-1/2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conjecture_exit_codes() {
    let out = run(&["conjecture", "c4", "-p", "3", "-N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    // a unit schedule from the scaled seed is not best possible: exit 1
    let out = run(&[
        "conjecture", "best-possible", "-r", "3", "-m", "2", "-s", "1", "-N", "3",
        "--schedule", "unit", "--seed-scale", "1/3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // non-prime p is a usage error
    let out = run(&["conjecture", "c4", "-p", "9", "-N", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conjecture_c2_records_winner() {
    let out = run(&["conjecture", "c2", "-n", "3", "-m", "2", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let support = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["params"] == "support")
        .expect("support entry");
    assert!(support["detail"].as_str().unwrap().contains("symmetric"));
}

#[test]
fn sequence_document_golden() {
    // freeze the exact document bytes for a tiny run; schema drift must be
    // deliberate (bump SCHEMA_VERSION, update this)
    let out = run(&["seq", "-r", "3", "-m", "2", "-s", "1", "-N", "2", "--schedule", "prime:3"]);
    assert_eq!(out.status.code(), Some(0));
    let expect = r#"{
  "schema": 1,
  "kind": "sequence",
  "family": "T",
  "r": "3",
  "m": 2,
  "s": "1",
  "strategy": "schedule(prime:3)",
  "seed_scale": "1/3",
  "n": 2,
  "polys": [
    [
      "1"
    ],
    [
      "1",
      "-5",
      "5"
    ]
  ],
  "contents": [
    "1",
    "1"
  ],
  "anomalies": []
}
"#;
    assert_eq!(stdout(&out), expect);
}

#[test]
fn conjecture_c3_runs_generically() {
    let out = run(&["conjecture", "c3", "-m", "1", "-N", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["params"].as_str().unwrap().contains("in Z[r,s,t]")));
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn reports_are_deterministic() {
    let first = run(&["conjecture", "c4", "-p", "3", "-N", "6"]);
    let second = run(&["conjecture", "c4", "-p", "3", "-N", "6"]);
    // timing fields are part of the document, so compare with them zeroed
    let normalize = |out: &Output| {
        let mut doc: serde_json::Value = serde_json::from_str(&stdout(out)).unwrap();
        for check in doc["checks"].as_array_mut().unwrap() {
            check["elapsed_ms"] = serde_json::json!(0);
        }
        doc.to_string()
    };
    assert_eq!(normalize(&first), normalize(&second));
}

#[test]
fn bench_produces_monotone_bit_sizes() {
    let out = run(&["bench", "-r", "11", "-m", "10", "-s", "1", "-N", "8", "--schedule", "prime:11"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let steps = doc["steps"].as_array().expect("steps");
    assert_eq!(steps.len(), 8);
    let bits: Vec<u64> = steps.iter().map(|s| s["max_coeff_bits"].as_u64().unwrap()).collect();
    assert!(bits.windows(2).skip(1).all(|w| w[0] <= w[1]), "bit curve {bits:?}");
    // determinism of the mathematics: a second run yields identical polys
    let again = run(&["seq", "-r", "11", "-m", "10", "-s", "1", "-N", "8", "--schedule", "prime:11"]);
    let once = run(&["seq", "-r", "11", "-m", "10", "-s", "1", "-N", "8", "--schedule", "prime:11"]);
    assert_eq!(stdout(&again), stdout(&once));
}

#[test]
fn cache_round_trip_through_env_var() {
    let dir = temp_dir("envcache");
    let args = ["seq", "-r", "4", "-m", "3", "-s", "1", "-N", "6", "--schedule", "k-matched"];
    let first = bin()
        .args(args)
        .env("PVI_TAU_CACHE_DIR", &dir)
        .output()
        .expect("binary runs");
    assert_eq!(first.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(&dir).expect("cache dir").collect();
    assert_eq!(files.len(), 1, "one cache document");
    // rewrite through the cache: output and file bytes must be unchanged
    let path = files[0].as_ref().unwrap().path();
    let cached_bytes = std::fs::read(&path).unwrap();
    let second = bin()
        .args(args)
        .env("PVI_TAU_CACHE_DIR", &dir)
        .output()
        .expect("binary runs");
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::read(&path).unwrap(), cached_bytes);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn out_flag_writes_the_document() {
    let dir = temp_dir("outflag");
    let path = dir.join("report.json");
    let out = bin()
        .args(["verify", "--suite", "polynomiality", "--out"])
        .arg(&path)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).expect("written");
    let doc: serde_json::Value = serde_json::from_str(&text).expect("json");
    assert_eq!(doc["checks"][0]["status"], "zero");
    let _ = std::fs::remove_dir_all(&dir);
}
