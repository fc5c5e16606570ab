//! End-to-end runs of the compiled binary: exit codes, output shapes,
//! and determinism of the experiment tables.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_repetilab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

static FILE_SEQ: AtomicU32 = AtomicU32::new(0);

fn scratch_file(name: &str, content: &str) -> PathBuf {
    let seq = FILE_SEQ.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!(
        "repetilab-cli-{}-{seq}-{name}",
        std::process::id()
    ));
    std::fs::write(&path, content).expect("scratch file writes");
    path
}

#[test]
fn family_prints_the_denoted_strings() {
    let out = run(&["family", "--name", "increasing-runs", "--param", "d=1..3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "cba\ncbabaa\ncbabaabaaa\n");
}

#[test]
fn unknown_family_is_a_usage_error() {
    let out = run(&["family", "--name", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("known families"));
}

#[test]
fn emitted_system_expands_back_to_the_same_string() {
    let out = run(&["family", "--name", "sqrt-size", "--param", "n=100", "--emit", "system"]);
    assert!(out.status.success());
    let path = scratch_file("sqrt.json", &stdout(&out));

    let expanded = run(&["expand", "--system", path.to_str().unwrap()]);
    assert!(expanded.status.success());
    let want = format!("{}1\n", "0".repeat(100));
    assert_eq!(stdout(&expanded), want);

    let classified = run(&["classify", "--system", path.to_str().unwrap()]);
    assert!(classified.status.success());
    assert!(stdout(&classified).contains("prolongable"));
}

#[test]
fn validate_reports_extraction_cycles_and_exits_nonzero() {
    let doc = r#"{
        "kind": "nusystem",
        "alphabet": ["a", "b"],
        "rules": {
            "a": [{"ext": {"sym": "b", "level": 1, "from": 1, "to": 1}}],
            "b": [{"ext": {"sym": "a", "level": 1, "from": 1, "to": 1}}]
        },
        "axiom": ["a"],
        "level": 2,
        "length": 2
    }"#;
    let path = scratch_file("cycle.json", doc);
    let out = run(&["validate", "--system", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("extraction cycle"));

    let ok = run(&["family", "--name", "gap-encoding", "--param", "n=16", "--emit", "system"]);
    let good = scratch_file("gap.json", &stdout(&ok));
    let out = run(&["validate", "--system", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ok\n");
}

#[test]
fn malformed_json_is_a_usage_error() {
    let path = scratch_file("broken.json", "{ not json");
    let out = run(&["validate", "--system", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn measure_emits_the_documented_csv_header() {
    let out = run(&["measure", "--family", "pow2-marks:n=2^4..2^6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# bwt-mode: rotations"));
    assert_eq!(
        lines.next(),
        Some("source,n,delta_num,delta_den,delta,r,z,z_no,z_e,runs_w,b,witness_size")
    );
    assert_eq!(lines.clone().count(), 3);
    assert!(lines.all(|l| l.starts_with("pow2-marks(n=")));
}

#[test]
fn measure_selects_requested_measures_only() {
    let out = run(&["measure", "--text", "00100100", "--measures", "b,z", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json output");
    let row = &doc["rows"][0];
    assert_eq!(row["b"], serde_json::json!(4));
    assert_eq!(row["z"], serde_json::json!(4));
    assert_eq!(row["r"], serde_json::Value::Null);
    assert_eq!(row["delta"], serde_json::Value::Null);
}

#[test]
fn bruteforce_over_the_length_cap_exits_with_the_resource_code() {
    let out = run(&["bruteforce", "--what", "bms", "--text", "0011001100110011"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("limit"));
}

#[test]
fn experiment_tables_are_deterministic_and_parallel_invariant() {
    let args =
        ["experiment", "--name", "runs-vs-logn", "--values", "2^8..2^10", "--seed", "42"];
    let serial = run(&[&args[..], &["--jobs", "1"]].concat());
    let parallel = run(&[&args[..], &["--jobs", "4"]].concat());
    assert!(serial.status.success());
    assert_eq!(stdout(&serial), stdout(&parallel));
    assert!(stdout(&serial).contains("# seed: 42"));

    let reseeded = run(&[&args[..3], &["--values", "2^8..2^10", "--seed", "43"]].concat());
    assert!(stdout(&reseeded).contains("# seed: 43"));
}

#[test]
fn verify_quick_passes_and_reports_every_check() {
    let out = run(&["verify", "--level", "quick", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json output");
    assert_eq!(doc["pass"], serde_json::json!(true));
    assert_eq!(doc["checks"].as_array().map(Vec::len), Some(6));
}
