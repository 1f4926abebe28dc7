use std::process::{Command, Output};

use wreath_bc::telescope::CellComplex;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreath-bc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn k_json_both_sides() {
    let o = bin(&["k", "--group", "Z2", "-n", "2", "--radius", "1", "--side", "both", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let docs: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(docs.as_array().unwrap().len(), 2);
    assert_eq!(docs[0]["basis"].as_array().unwrap().len(), docs[1]["basis"].as_array().unwrap().len());
    assert_eq!(docs[1]["side"], "topological");
}

#[test]
fn k_small_s3() {
    let o = bin(&["k", "--group", "S3", "-n", "1", "--radius", "0", "--side", "analytic"]);
    let docs: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(docs[0]["basis"].as_array().unwrap().len(), 3);
    assert_eq!(docs[0]["k1_rank"], 1);
}

#[test]
fn burnside_violation_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "name = \"bad\"\norder = 6\n[[irreps]]\nid = \"triv\"\ndim = 1\ntrivial = true\n[[irreps]]\nid = \"x\"\ndim = 2\n").unwrap();
    let o = bin(&["k", "--group", path.to_str().unwrap(), "-n", "1", "--radius", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Burnside identity"));
}

#[test]
fn verify_passes_and_is_reproducible() {
    for (group, n) in [("Z2", "2"), ("Z3", "3")] {
        let a = bin(&["verify", "--group", group, "-n", n, "--radius", "1", "--seed", "11"]);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert!(!stdout(&a).contains("FAIL"));
        let b = bin(&["verify", "--group", group, "-n", n, "--radius", "1", "--seed", "11"]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn telescope_homology_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cells.txt");
    let o = bin(&["telescope", "--group", "Z2", "-n", "2", "--radius", "1", "--levels", "3", "--export", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("H0: Z\n") && out.contains("H1: 0\n") && out.contains("euler characteristic: 1\n"), "{out}");
    let text = std::fs::read_to_string(&path).unwrap();
    let cx = CellComplex::from_json(&text).unwrap();
    assert_eq!(cx.to_json(), text);
    assert_eq!(bin(&["telescope", "--group", "Z2", "-n", "2", "--radius", "1", "--levels", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["telescope", "--group", "Z2", "-n", "2", "--radius", "3", "--levels", "3"]).status.code(), Some(2));
}

#[test]
fn trace_denominators() {
    for (group, bound, line) in [("S3", "2", "d = 1/36"), ("Z2", "0", "d = 1/1"), ("D4", "1", "d = 1/8")] {
        let o = bin(&["trace", "--group", group, "--bound", bound]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).lines().any(|l| l == line));
    }
}

#[test]
fn too_large_requests_are_refused() {
    let o = bin(&["k", "--group", "Q8", "-n", "3", "--radius", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
