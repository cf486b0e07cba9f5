use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudoline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn check_seq_exit_codes() {
    let ok = run(&["check-seq", "2,2,2"]);
    assert_eq!(ok.status.code(), Some(0));
    let body = json(&ok);
    assert_eq!(body["accepted"], true);
    assert_eq!(body["plan"]["n"], 3);

    let parity = run(&["check-seq", "4,4,2,2,2,2"]);
    assert_eq!(parity.status.code(), Some(1));
    assert_eq!(json(&parity)["code"], "PARITY");

    let degree = run(&["check-seq", "5,2,2"]);
    assert_eq!(degree.status.code(), Some(1));
    assert_eq!(json(&degree)["code"], "NOT_234_DEGREES");

    let bad = run(&["check-seq", "2,2,x"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(json(&bad)["position"], 5);
}

#[test]
fn realize_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let lines = dir.path().join("a.json");
    let svg = dir.path().join("a.svg");
    let out = run(&[
        "realize",
        "4,4,4,3,3,3,3,2,2,2",
        "--out",
        lines.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let report = run(&["analyze", lines.to_str().unwrap()]);
    assert_eq!(report.status.code(), Some(0));
    let body = json(&report);
    assert_eq!(body["n"], 5);
    assert_eq!(body["diameter"], 3);
    assert_eq!(body["degree_sequence"], serde_json::json!([4, 4, 4, 3, 3, 3, 3, 2, 2, 2]));
    assert_eq!(body["diametrical_equals_outer_face"], true);
}

#[test]
fn analyze_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "t.json", r#"{"n": 3, "swaps": [1, 2, 1]}"#);
    let out = run(&["analyze", &f, "--distances"]);
    assert_eq!(out.status.code(), Some(0));
    let body = json(&out);
    assert_eq!(body["diameter"], 1);
    assert_eq!(body["radius"], 1);
    assert_eq!(body["diametrical"].as_array().unwrap().len(), 3);
    assert_eq!(body["diametrical_equals_outer_face"], true);
    assert_eq!(body["distances"]["1,2"]["2,3"], 1);
}

#[test]
fn analyze_star_from_lines() {
    // five lines through the sides of a pentagram-like star
    let dir = tempfile::tempdir().unwrap();
    let lines = dir.path().join("star.json");
    let out = run(&["realize", "2,2,2,2,2,4,4,4,4,4", "--out", lines.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let body = json(&run(&["analyze", lines.to_str().unwrap()]));
    assert_eq!(body["diameter"], 3);
    assert_eq!(body["radius"], 3);
    assert_eq!(body["radius_window"]["within"], true);
    assert_eq!(body["diametrical"], body["outer_face"]);
}

#[test]
fn analyze_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d.txt", "5: 1 2 1 3 2 1 4 3 2 1");
    let a = run(&["analyze", &f, "--distances"]);
    let b = run(&["analyze", &f, "--distances"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["enumerate", "3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["n3_000000.json", "n3_000001.json"]);

    let lines = run(&["enumerate", "4"]);
    assert_eq!(String::from_utf8(lines.stdout).unwrap().lines().count(), 16);
}

#[test]
fn verify_small() {
    let all = run(&["verify", "--n-max", "4"]);
    assert_eq!(all.status.code(), Some(0), "{}", String::from_utf8_lossy(&all.stderr));
    let body = json(&all);
    assert_eq!(body["failures"].as_array().unwrap().len(), 0);
    assert_eq!(body["instances"]["4"], 16);

    let one = run(&["verify", "--claims", "diameter"]);
    assert_eq!(one.status.code(), Some(0));
    let body = json(&one);
    assert_eq!(body["checked"]["diameter"], 786);
    assert_eq!(body["claims"], serde_json::json!(["diameter"]));

    let unknown = run(&["verify", "--claims", "no-such-claim"]);
    assert_eq!(unknown.status.code(), Some(2));

    let list = run(&["verify", "--list"]);
    assert!(String::from_utf8(list.stdout).unwrap().contains("diameter"));
}

#[test]
fn render_formats() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w.json", r#"{"n": 4, "swaps": [1, 2, 1, 3, 2, 1]}"#);
    for target in ["wiring", "arrangement", "graph"] {
        let out = run(&["render", &f, "--target", target, "--mark-outer", "--mark-diametrical"]);
        assert_eq!(out.status.code(), Some(0));
        let s = String::from_utf8(out.stdout).unwrap();
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<polyline").count(), 4);
        assert_eq!(s.matches("<circle").count() - s.matches("class=\"diametrical\"").count(), 6);
    }
    let dot = run(&["render", &f, "--format", "dot"]);
    let s = String::from_utf8(dot.stdout).unwrap();
    assert!(s.starts_with("graph arrangement {"));
    assert_eq!(s.matches(" -- ").count(), 8);

    let bad = run(&["render", &f, "--width", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn render_wiring_of_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "l.json", r#"{"lines": [[1, 0, 0], [0, 1, 0], [1, 1, 1], [1, -1, 3]]}"#);
    let out = run(&["render", &f, "--target", "wiring"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().matches("<polyline").count(), 4);
}

#[test]
fn bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["analyze", missing.to_str().unwrap()]).status.code(), Some(2));

    let invalid = write(dir.path(), "bad.json", r#"{"n": 3, "swaps": [1, 1, 2]}"#);
    let out = run(&["analyze", &invalid]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let concurrent = write(dir.path(), "c.json", r#"{"lines": [[1, 0, 0], [0, 1, 0], [1, 1, 0]]}"#);
    assert_eq!(run(&["analyze", &concurrent]).status.code(), Some(2));
}
