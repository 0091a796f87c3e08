use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use cdga_cli::parse;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_str().unwrap().to_string()
}

fn cdga(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cdga"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn worked_example_diagram() {
    let (code, out, _) = cdga(&["minimal-model", &data("worked_example.cdga"), "--degree", "4"], None);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "4-minimal model: 4 generators in degrees (1, 1, 1, 2)\n\
         e6 <- x1_0 -> 0\n\
         e5 <- x1_1 -> 0\n\
         e4 <- y1_0 -> x1_0*x1_1\n\
         e7 <- x2_0 -> 0\n\
         invariants: v^1_0=2, v^1_1=1, v^2_0=1\n"
    );
}

#[test]
fn cohomology_in_degree_one() {
    let (code, out, _) = cdga(&["cohomology", &data("worked_example.cdga"), "--degree", "1"], None);
    assert_eq!(code, 0);
    assert_eq!(out, "H^1: dimension 2\nbasis: [e6, e5]\n");
}

#[test]
fn formality_text_gives_evidence() {
    let (code, out, _) = cdga(&["formality", &data("g5_14.cdga"), "--degree", "2"], None);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("False"));
    assert!(out.contains("model invariants: v^1_0=2, v^1_1=1, v^2_0=1"));
    assert!(out.contains("first difference: v^1_2"));
}

#[test]
fn reads_stdin() {
    let text = "generators: e2:2 e3:3\nrelations: e2^2, e2*e3\n";
    let (code, out, _) = cdga(&["basis", "-", "--degree", "3"], Some(text));
    assert_eq!(code, 0);
    assert_eq!(out, "[e3]\n");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let (code, _, err) = cdga(&["validate", "-"], Some("generators: a:1 b:1\ndifferential:\n  a = a*c\n"));
    assert_eq!(code, 2);
    assert!(err.contains("line 3, column 9"), "{err}");
    let (code, _, err) = cdga(&["validate", "-"], Some("generators: a:0\n"));
    assert_eq!(code, 2);
    assert!(err.contains("connected"));
    let (code, _, _) = cdga(&["validate", "/nonexistent/file.cdga"], None);
    assert_eq!(code, 2);
}

#[test]
fn invalid_algebra_exits_2() {
    // d²(b) = d(a*a) = 0 but d²(c) = d(b) ≠ 0.
    let text = "generators: a:2 b:3 c:2\ndifferential:\n  b = a^2\n  c = b\n";
    let (code, _, err) = cdga(&["minimal-model", "-", "--degree", "2"], Some(text));
    assert_eq!(code, 2);
    assert!(err.contains("invalid algebra"), "{err}");
    let (code, _, _) = cdga(&["validate", "-"], Some(text));
    assert_eq!(code, 2);
    let (code, out, _) = cdga(&["validate", &data("worked_example.cdga")], None);
    assert_eq!((code, out.as_str()), (0, "valid (checked up to degree 4)\n"));
}

#[test]
fn missing_degree_exits_2() {
    let (code, _, err) = cdga(&["formality", &data("g5_35.cdga")], None);
    assert_eq!(code, 2);
    assert!(err.contains("--degree"));
}

#[test]
fn iteration_limit_exits_3() {
    let (_, presentation, _) = cdga(&["cohomology-algebra", &data("g5_14.cdga"), "--degree", "3"], None);
    let (code, out, err) = cdga(&["minimal-model", "-", "--degree", "2"], Some(&presentation));
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.starts_with("could not cover all relations in max iterations in degree 2"));
}

#[test]
fn emitted_presentations_round_trip() {
    for (file, n) in [("g5_14.cdga", "3"), ("worked_example.cdga", "3"), ("wedge_s2_s3.cdga", "5")] {
        let (code, out, _) = cdga(&["cohomology-algebra", &data(file), "--degree", n], None);
        assert_eq!(code, 0);
        let doc = parse(&out).unwrap();
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
        let (code, _, _) = cdga(&["validate", "-"], Some(&out));
        assert_eq!(code, 0);
    }
}

#[test]
fn data_files_round_trip() {
    for file in ["worked_example.cdga", "wedge_s2_s3.cdga", "g5_14.cdga", "g5_35.cdga"] {
        let doc = parse(&std::fs::read_to_string(data(file)).unwrap()).unwrap();
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
    }
}

#[test]
fn json_invariants_sorted() {
    let (code, out, _) = cdga(&["minimal-model", &data("g5_14.cdga"), "--degree", "3", "--format", "json"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["degree", "generators", "differential", "phi", "invariants"]);
    let inv: Vec<Vec<u64>> = serde_json::from_value(v["invariants"]["v"].clone()).unwrap();
    assert_eq!(inv, [[1, 0, 2], [1, 1, 1], [2, 0, 1], [3, 1, 1]]);
}
