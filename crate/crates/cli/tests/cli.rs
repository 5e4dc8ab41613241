use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graded-ll"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

fn tallies(v: &Value) -> (u64, u64, u64) {
    let mut t = (0, 0, 0);
    for c in v["checks"].as_array().unwrap() {
        match c["status"].as_str().unwrap() {
            "pass" => t.0 += 1,
            "fail" => t.1 += 1,
            "error" => t.2 += 1,
            s => panic!("bad status {s}"),
        }
    }
    t
}

fn assert_consistent(code: i32, v: &Value) {
    let (p, f, e) = tallies(v);
    assert_eq!(v["summary"]["pass"], p);
    assert_eq!(v["summary"]["fail"], f);
    assert_eq!(v["summary"]["error"], e);
    assert_eq!(code == 0, f == 0 && e == 0);
    for c in v["checks"].as_array().unwrap() {
        assert!(!c["paper_anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn relations_report_has_enough_checks() {
    let (code, v) = report(&["verify", "relations"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().len() >= 28);
    assert_eq!(v["command"], "verify relations");
    assert_consistent(code, &v);
}

#[test]
fn algebra_d_closes() {
    let (code, v) = report(&["verify", "algebra", "--name", "D"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"colour Jacobi identity"));
    assert!(names.iter().any(|n| n.starts_with("[P1, P1]")));
    assert_consistent(code, &v);
}

#[test]
fn unknown_algebra_is_a_usage_error() {
    assert_eq!(run(&["verify", "algebra", "--name", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "algebra"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "free", "--k-wave", "foo("]).status.code(), Some(2));
    assert_eq!(run(&["solve", "harmonic", "--n", "1", "--beta", "-1", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn algebra_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alg.json");
    let spec = r#"{"name":"pair","n":2,"factor":"super","basis":[
        {"label":"I","degree":[0,0],"op":"I"},
        {"label":"P1","degree":[1,1],"op":"g1*P"}]}"#;
    std::fs::write(&path, spec).unwrap();
    let (code, v) = report(&["verify", "algebra", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_consistent(code, &v);
    std::fs::write(&path, "{").unwrap();
    assert_eq!(run(&["verify", "algebra", "--file", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn harmonic_reports_seven_halves_omega() {
    let (code, v) = report(&["solve", "harmonic", "--n", "3", "--beta", "2", "--k", "1"]);
    assert_eq!(code, 0);
    let first = &v["checks"][0];
    assert_eq!(first["status"], "pass");
    assert!(first["details"].as_str().unwrap().contains("(7/2)"));
    assert_consistent(code, &v);
}

#[test]
fn numeric_flags_need_numeric() {
    assert_eq!(
        run(&["solve", "harmonic", "--n", "1", "--beta", "2", "--k", "1", "--grid", "100"]).status.code(),
        Some(2)
    );
    let (code, v) = report(&[
        "solve", "harmonic", "--n", "0", "--beta", "2", "--k", "1", "--numeric", "--grid", "400", "--domain", "10",
        "--count", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["params"]["grid"], 400);
    assert_consistent(code, &v);
}

#[test]
fn failing_report_exits_one() {
    let (code, v) = report(&["verify", "clifford", "--d", "2"]);
    assert_eq!(code, 1);
    assert_consistent(code, &v);
    let (code, v) = report(&["verify", "clifford", "--d", "3"]);
    assert_eq!(code, 0);
    assert_consistent(code, &v);
}

#[test]
fn output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = run(&["--output", p.to_str().unwrap(), "verify", "ode"]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    assert_eq!(x.last(), Some(&b'\n'));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 2, "no temp files left behind");
}

#[test]
fn unwritable_output_exits_one() {
    let out = run(&["--output", "/nonexistent-dir/r.json", "verify", "ode"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format_renders_same_checks() {
    let out = run(&["--format", "text", "verify", "relations"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, v) = report(&["verify", "relations"]);
    let lines = text.lines().filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")).count();
    assert_eq!(lines, v["checks"].as_array().unwrap().len());
}
