use std::process::{Command, Output};

fn rauzy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rauzy")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = rauzy(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn encode_decode() {
    assert_eq!(stdout(&["encode", "--a", "4", "--b", "-2", "--n", "48"]), "3,1,2\n");
    assert_eq!(stdout(&["decode", "--a", "4", "--b", "-2", "--digits", "3,1,2"]), "48\n");
    assert_eq!(stdout(&["encode", "--a", "4", "--b", "-2", "--n", "0"]), "0\n");
}

#[test]
fn seq_and_expand() {
    assert_eq!(stdout(&["seq", "--a", "4", "--b", "-2", "--n", "4", "--from", "-4"]), "-4,2\n-3,1\n-2,0\n-1,0\n");
    assert_eq!(stdout(&["expand", "--a", "3", "--b", "-2", "--count", "5"]), "2,0,1,1,1\n");
}

#[test]
fn classify_outside_range_is_not_an_error() {
    assert_eq!(stdout(&["classify", "--a", "2", "--b", "3"]), "case-iii finiteness=true\n");
    assert_eq!(stdout(&["classify", "--a", "4", "--b", "2"]), "case-i finiteness=true\n");
}

#[test]
fn exit_codes() {
    let bad = rauzy(&["roots", "--a", "4", "--b", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.starts_with("OutOfRange"), "{err}");
    assert_eq!(err.lines().count(), 1);

    assert_eq!(rauzy(&["encode", "--a", "4"]).status.code(), Some(1));
    assert_eq!(rauzy(&["decode", "--a", "4", "--b", "-2", "--digits", "3,2"]).status.code(), Some(1));
    assert_eq!(rauzy(&["seq", "--a", "4", "--b", "-2", "--from", "-5"]).status.code(), Some(1));
    assert_eq!(rauzy(&["--help"]).status.code(), Some(0));
    assert_eq!(rauzy(&["scan", "--a", "4", "--b", "-2", "--depth", "10"]).status.code(), Some(0));
    assert_eq!(rauzy(&["fractal", "--a", "4", "--b", "-2", "--kind", "r", "--depth", "3"]).status.code(), Some(0));
    assert_eq!(rauzy(&["fractal", "--a", "4", "--b", "-2", "--kind", "R"]).status.code(), Some(1));
}

#[test]
fn verify_writes_report_even_when_failing() {
    let dir = std::env::temp_dir().join(format!("rauzy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v.json");
    let out = rauzy(&["verify", "--a", "4", "--b", "-2", "--qmax", "2000", "--out", path.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let anomalies = report["anomalies"].as_array().unwrap();
    assert_eq!(out.status.code(), Some(if anomalies.is_empty() { 0 } else { 2 }));
    assert_eq!(report["a"], 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fractal_output_is_deterministic_across_thread_counts() {
    let args = ["fractal", "--a", "4", "--b", "-2", "--kind", "E", "--count", "3000"];
    let one = rauzy(&[&["--threads", "1"], &args[..]].concat());
    let many = rauzy(&[&["--threads", "4"], &args[..]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert_eq!(text.lines().count(), 3001);
    assert!(text.starts_with("kind,index,x,y\nE,0,0.0000000000000000e0,0.0000000000000000e0\nE,1,"));
}

#[test]
fn approx_single_q() {
    assert_eq!(stdout(&["approx", "--a", "4", "--b", "-2", "--q", "49"]), "49,2.3094283389063969e-2,14,4\n");
}
