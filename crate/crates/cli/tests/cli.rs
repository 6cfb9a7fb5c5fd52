use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn funtf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_funtf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn asset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets").join(name)
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = args.to_vec();
    full.extend(["--no-timestamp", "-o", path.to_str().unwrap()]);
    let out = funtf(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn gen_full_sizes_and_cap() {
    for (n, size) in [("1", 2), ("2", 12)] {
        let out = funtf(&["gen-full", n, "--no-timestamp"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["operators"].as_array().unwrap().len(), size);
    }
    let out = funtf(&["gen-full", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--cap-override"));
    assert_eq!(funtf(&["gen-full", "2", "--cap-override", "1"]).status.code(), Some(2));
    let out = funtf(&["gen-full", "3", "--cap-override", "3", "--no-timestamp"]);
    assert_eq!(json(&out)["operators"].as_array().unwrap().len(), 120);
}

#[test]
fn gen_min_sizes() {
    for (n, size) in [("1", 1), ("3", 20), ("5", 144)] {
        let out = funtf(&["gen-min", n, "--no-timestamp"]);
        assert_eq!(out.status.code(), Some(0));
        let doc = json(&out);
        assert_eq!(doc["operators"].as_array().unwrap().len(), size);
        assert_eq!(doc["metadata"]["generator"], "minimal-balanced");
        assert!(doc["metadata"].get("created").is_none());
    }
    let out = funtf(&["gen-min", "2"]);
    assert!(json(&out)["metadata"]["created"].is_string());
}

#[test]
fn deterministic_output() {
    let a = funtf(&["gen-min", "3", "--no-timestamp"]);
    let b = funtf(&["gen-min", "3", "--no-timestamp"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with('\n'));
    let dir = tempfile::tempdir().unwrap();
    let file = gen_to(dir.path(), "m3.json", &["gen-min", "3"]);
    let f = file.to_str().unwrap();
    let a = funtf(&["check-funtf", f, "--seed", "4"]);
    let b = funtf(&["check-funtf", f, "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_balance_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen_to(dir.path(), "m2.json", &["gen-min", "2"]);
    let out = funtf(&["check-balance", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["balanced"], true);

    // Delete the last operator.
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    doc["operators"].as_array_mut().unwrap().pop();
    let five = dir.path().join("five.json");
    std::fs::write(&five, doc.to_string()).unwrap();
    let out = funtf(&["check-balance", five.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["balanced"], false);
    assert_eq!(report["set_size"], 5);
    let failures = report["condition_i_failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert_eq!(failures[0]["required"], "5/3");

    // Corrupt a sign.
    doc["operators"][2]["signs"][0] = Value::from(-doc["operators"][2]["signs"][0].as_i64().unwrap());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = funtf(&["check-balance", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("record 2"));

    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(funtf(&["check-balance", bad.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn check_funtf_reports() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen_to(dir.path(), "m2.json", &["gen-min", "2"]);
    let out = funtf(&["check-funtf", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["frame"]["tight"], true);
    assert!((r["frame"]["frame_constant"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(r["frame"]["theoretical_constant"], 2.0);
    assert_eq!(r["frame"]["points_checked"], 6 + 100);
    assert!(r.get("witness").is_none());

    let out = funtf(&["check-funtf", asset("s3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["frame"]["frame_constant"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let out = funtf(&["check-funtf", asset("s1.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // Remove an operator with k_1 = 2.
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let ops = doc["operators"].as_array_mut().unwrap();
    let pos = ops.iter().position(|o| o["pairing"][0] == 2).unwrap();
    ops.remove(pos);
    let five = dir.path().join("five.json");
    std::fs::write(&five, doc.to_string()).unwrap();
    let out = funtf(&["check-funtf", five.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["balanced"], false);
    let w = &r["witness"];
    assert_eq!(w["defect"], "1/3");
    assert_eq!(w["probe_pair"], serde_json::json!([1, 2]));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(w["point"], serde_json::json!([h, h, 0.0, 0.0]));
}

#[test]
fn matrix_output() {
    let out = funtf(&["matrix", "1"]);
    assert_eq!(stdout(&out), "0 1\n1 0\n");
    let out = funtf(&["matrix", "2"]);
    assert_eq!(stdout(&out), "0 2 3 1\n2 0 1 3\n3 1 0 2\n1 3 2 0\n");
    let out = funtf(&["matrix", "4"]);
    for line in stdout(&out).lines() {
        assert!(!line.ends_with(' '));
        let mut row: Vec<usize> = line.split(' ').map(|v| v.parse().unwrap()).collect();
        row.sort();
        assert_eq!(row, (0..8).collect::<Vec<_>>());
    }
    assert_eq!(funtf(&["matrix", "x"]).status.code(), Some(2));
    assert_eq!(funtf(&["matrix", "0"]).status.code(), Some(2));
}

#[test]
fn erasure_demo() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen_to(dir.path(), "m2.json", &["gen-min", "2"]);
    let f = file.to_str().unwrap();

    let r = json(&funtf(&["demo-erasure", f, "--erase", "0"]));
    assert!(r["error_norm_frame"].as_f64().unwrap() <= 1e-12);

    let out = funtf(&["demo-erasure", f, "--erase", "1", "--point-seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["trials"], 100);
    assert!(r["error_norm_frame"].as_f64().unwrap() < r["error_norm_basis_baseline"].as_f64().unwrap());

    let r = json(&funtf(&["demo-erasure", f, "--erase", "5"]));
    let e = r["error_norm_frame"].as_f64().unwrap();
    assert!(e.is_finite() && e > 0.1);

    assert_eq!(funtf(&["demo-erasure", f, "--erase", "6"]).status.code(), Some(2));
}

#[test]
fn written_document_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen_to(dir.path(), "f2.json", &["gen-full", "2"]);
    let text = std::fs::read_to_string(&file).unwrap();
    let set = funtf_core_set(&text);
    assert_eq!(set, funtf_core::enumerate_full(2).unwrap());
}

fn funtf_core_set(text: &str) -> funtf_core::OperatorSet {
    funtf_core::document::read_set(text).unwrap()
}

#[test]
fn assets_match_presets() {
    let s1 = std::fs::read_to_string(asset("s1.json")).unwrap();
    assert_eq!(funtf_core_set(&s1), funtf_core::presets::circle());
    let s3 = std::fs::read_to_string(asset("s3.json")).unwrap();
    assert_eq!(funtf_core_set(&s3), funtf_core::presets::s3_triple());
}
