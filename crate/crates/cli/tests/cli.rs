use std::path::{Path, PathBuf};
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_brachy")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

/// Report text before the `[stats]` section.
fn body(text: &str) -> &str {
    text.split("[stats]").next().unwrap()
}

fn core_fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn build(dir: &Path, spec: &str, file: &str) -> String {
    let path = dir.join(file);
    let (code, _) = run(&["build", "--spec", spec, "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    path.to_str().unwrap().to_string()
}

#[test]
fn fixture_table1_cites_the_pair() {
    let (code, out) = run(&["fixture", "table1"]);
    assert_eq!(code, 0);
    assert!(out.contains("violation_pair: (a, b)\n"));
    assert!(out.contains("verdict: verified\n"));
}

#[test]
fn fixture_table2_verifies() {
    let (code, out) = run(&["fixture", "table2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("violation_pair: (2, 4)\n"));
}

#[test]
fn sum_of_variables_is_not_a_brachynomial() {
    let (code, out) = run(&["brachynomial", "--poly", "x + y"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: not a brachynomial\n"));
    assert!(out.starts_with("command: brachynomial --poly \"x + y\"\n"));
}

#[test]
fn zmod4_has_only_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = build(dir.path(), "zmod(4)", "zmod4.struct");
    let (code, out) = run(&["morphisms", &z4, &z4]);
    assert_eq!(code, 0);
    assert!(out.contains("morphism 0: [0, 1, 2, 3]\nviolations 0: none\n"));
    assert!(out.contains("count morphisms: 1\ncount violations: 0\n"));
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = build(dir.path(), "matring(zmod(2),2)", "m2.struct");
    let (_, one) = run(&["--jobs", "1", "morphisms", &m2, &m2]);
    let (_, four) = run(&["--jobs", "4", "morphisms", &m2, &m2]);
    assert_eq!(body(&one).replace("--jobs 1", ""), body(&four).replace("--jobs 4", ""));
    let (_, a) = run(&["certify", &m2]);
    let (_, b) = run(&["certify", &m2]);
    assert_eq!(body(&a), body(&b));
}

#[test]
fn report_file_is_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, _) = run(&["--report", path.to_str().unwrap(), "weyl", "--m", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert!(v["stats"]["wall_time_ms"].is_string());
    assert_eq!(v["items"][2]["value"], "holds");
}

#[test]
fn exit_codes_distinguish_failures() {
    assert_eq!(run(&["weyl", "--m", "1"]).0, 2);
    assert_eq!(run(&["fixture", "table3"]).0, 2);
    assert_eq!(run(&["identities", "--case", "no-such-case"]).0, 2);
    assert_eq!(run(&["search", "--class", "nearring", "--order", "16", "--budget", "500"]).0, 3);
    let dir = tempfile::tempdir().unwrap();
    let m2 = build(dir.path(), "matring(zmod(2),2)", "m2.struct");
    let (code, out) = run(&["formula", "--name", "S_comm", "--struct", &m2, "--tuple", "[[1,1],[0,1]],[[1,0],[1,1]]"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("verdict: formula inapplicable to this pair\n"));
}

#[test]
fn failing_identity_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cases.txt");
    std::fs::write(&path, "name: wrong\ncitation: none\nlhs: xy\nrhs: yx\n").unwrap();
    let (code, out) = run(&["identities", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("identity wrong: fails"));
}

#[test]
fn passing_suites() {
    assert_eq!(run(&["identities"]).0, 0);
    let (code, out) = run(&["matrix", "--nmax", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("m6 n=3: holds"));
    let (code, out) = run(&["detaudit", "--spec", core_fixture("audit.battery").to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("premise violated"));
    let (code, out) = run(&["search", "--class", "semiring", "--order", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("outcome: complete\ncount counterexamples: 1\n"));
}

#[test]
fn check_and_formula_on_z6() {
    let dir = tempfile::tempdir().unwrap();
    let z6 = build(dir.path(), "zmod(6)", "z6.struct");
    let (code, out) = run(&["check", &z6]);
    assert_eq!(code, 0);
    assert!(out.contains("jacobson_radical: {0}\n"));
    let (code, out) = run(&["formula", "--name", "S_perp", "--struct", &z6, "--tuple", "2,3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("condition_ii: true\n"));
    let (code, out) = run(&["certify", &z6, "--pairs"]);
    assert_eq!(code, 0);
    assert!(out.contains("replay: ok\n"));
}
