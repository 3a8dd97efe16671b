use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn adelgr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adelgr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog/golden")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const KERNEL: &str = r#"{
  "algebra": "dual_numbers.json",
  "basis": [[{"idempotent": 0, "exponent": "1", "poly": [["1", "0"], ["0", "1"]]}]]
}"#;

#[test]
fn examples_pass_with_zero_exit() {
    let dir = golden_dir();
    for name in ["dual-numbers", "a2", "kronecker", "degenerate-m2"] {
        let o = adelgr(&["examples", name, "--golden-dir", s(&dir)]);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn json_reports_parse() {
    let o = adelgr(&["--format", "json", "examples", "a2", "--golden-dir", s(&golden_dir())]);
    let v: Value = serde_json::from_slice(&o.stdout).expect("json report");
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(v["children"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn tampered_golden_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    for e in fs::read_dir(golden_dir()).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), tmp.path().join(e.file_name())).unwrap();
    }
    let p = tmp.path().join("kronecker.json");
    let text = fs::read_to_string(&p).unwrap();
    fs::write(&p, text.replacen("\"1\"", "\"7\"", 1)).unwrap();
    let o = adelgr(&["examples", "kronecker", "--golden-dir", s(tmp.path())]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn point_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let t = tmp.path();
    let cat = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog/dual_numbers.json");
    fs::write(t.join("k.json"), KERNEL).unwrap();
    let (k, pt, succ, rp) = (t.join("k.json"), t.join("p.json"), t.join("s.json"), t.join("r.json"));

    let o = adelgr(&["point", "build", "--algebra", s(&cat), "--kernel", s(&k), "-o", s(&pt)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&pt).unwrap()).unwrap();
    assert!(v["operator"]["coeffs"].is_array());

    let o = adelgr(&["point", "successor", s(&pt), "--gamma", "-1/2", "-o", s(&succ)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = adelgr(&["point", "same-fiber", s(&pt), s(&succ)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let o = adelgr(&["point", "embed", s(&pt), "-o", s(&rp)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v: Value = serde_json::from_str(&fs::read_to_string(&rp).unwrap()).unwrap();
    assert!(v["generators"].is_array());

    let o = adelgr(&["verify", "bispectral", s(&pt)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn payload_on_stdout_report_on_stderr() {
    let tmp = tempfile::tempdir().unwrap();
    let k = tmp.path().join("k.json");
    let cat = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog/dual_numbers.json");
    fs::write(&k, KERNEL).unwrap();
    let o = adelgr(&["point", "build", "--algebra", s(&cat), "--kernel", s(&k)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).expect("point on stdout");
    assert!(v["certificate"].is_array());
    assert!(String::from_utf8_lossy(&o.stderr).contains("point built"));
}

#[test]
fn malformed_rational_is_a_parse_error() {
    let tmp = tempfile::tempdir().unwrap();
    let k = tmp.path().join("k.json");
    fs::write(&k, KERNEL.replace("\"exponent\": \"1\"", "\"exponent\": \"1/0\"")).unwrap();
    let cat = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog/dual_numbers.json");
    let o = adelgr(&["point", "build", "--algebra", s(&cat), "--kernel", s(&k)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exponent"));
}

#[test]
fn radical_of_dual_numbers() {
    let cat = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog/dual_numbers.json");
    let o = adelgr(&["--format", "json", "algebra", "radical", s(&cat)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["children"][1]["witness"], "1");
}
