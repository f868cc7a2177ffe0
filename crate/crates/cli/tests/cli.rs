use std::io::Write;
use std::process::{Command, Output, Stdio};

fn binform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binform"))
        .args(args)
        .env_remove("BINFORM_FIELD")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn classify_prints_stratum() {
    let out = binform(&["classify", "--d", "2", "--e", "3", "--F", "X0*X1", "--G", "X0^3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"g":1,"u":1,"in_delta":true}"#);
}

#[test]
fn resultant_and_gcd() {
    let out = binform(&["res", "--F", "X0^2 - 3*X0*X1 + 2*X1^2", "--G", "X0 + X1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains('6'));
    let out = binform(&["gcd", "--F", "X0^2 - X1^2", "--G", "X0^2 - 3*X0*X1 + 2*X1^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("X0 - X1"));
}

#[test]
fn picard_delta() {
    let out = binform(&["pic", "delta", "--d", "3", "--e", "5"]);
    assert_eq!(stdout(&out).trim(), r#"{"h":5,"xi":3,"exc":[-2]}"#);
}

#[test]
fn curve_verify_succeeds() {
    let out = binform(&["curve", "verify", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["resultant_profile"], "t^4");
}

#[test]
fn constant_family_in_delta_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fam.json");
    std::fs::write(&path, r#"{"d": 2, "e": 3, "F": "X0^2", "G": "X0*X1^2"}"#).unwrap();
    let out = binform(&["curve", "verify", "--family", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_input_exits_two() {
    let out = binform(&["classify", "--d", "2", "--e", "3", "--F", "2X0^2", "--G", "X1^3"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert!(err["error"].as_str().unwrap().contains("parse error"));

    let out = binform(&["classify", "--d", "2", "--e", "3", "--F", "X0^3", "--G", "X1^3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_errors_carry_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fam.json");
    std::fs::write(&path, r#"{"d": 1, "e": 2, "F": "X0 + t*X1", "G": {"degree": 2, "coeffs": ["1", "t +", "0"]}}"#).unwrap();
    let out = binform(&["limit", "--family", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/G/coeffs/1"), "{}", stderr(&out));
}

#[test]
fn injected_fault_exits_one() {
    let out = binform(&["verify-all", "--only", "ideals.hilbert", "--samples", "3", "--fault", "model-hf-sign"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], false);
}

#[test]
fn verify_all_is_reproducible() {
    let args = ["verify-all", "--seed", "3", "--samples", "3", "--only", "pic,ideals.hilbert"];
    let a = binform(&args);
    let b = binform(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("elapsed_ms"));
}

#[test]
fn census_writes_csv() {
    let out = binform(&["--field", "fp:3", "census", "--d", "2", "--e", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "u,count,cumulative\n1,16,16\n2,36,52\n");
    assert!(stderr(&out).contains("disagreements=0"));
}

#[test]
fn field_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_binform"))
        .args(["census", "--d", "2", "--e", "3"])
        .env("BINFORM_FIELD", "fp:3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("2,36,52\n"));
}

#[test]
fn ideal_from_stdin() {
    let ideal = r#"{"d": 1, "e": 2, "layers": [
        [],
        [{"degree": 1, "coeffs": ["1", "0"]}],
        [{"degree": 2, "coeffs": ["1", "0", "0"]}, {"degree": 2, "coeffs": ["0", "1", "0"]}, {"degree": 2, "coeffs": ["0", "0", "1"]}]
    ]}"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_binform"))
        .args(["hf", "--ideal", "-"])
        .env_remove("BINFORM_FIELD")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(ideal.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("[0,1,3]"));
}

#[test]
fn invariant_table_csv() {
    let out = binform(&["inv", "table", "--d", "1", "--e", "2", "--amax", "2", "--bmax", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("a,b,ambient,invariant,free_ring\n"));
    assert!(text.contains("\n2,1,9,1,1\n"), "{text}");
}

#[test]
fn invariants_refuse_finite_fields() {
    let out = binform(&["--field", "fp:7", "inv", "dim", "--d", "1", "--e", "2", "--a", "1", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("char 7"));
}

#[test]
fn census_prime_flag() {
    let out = binform(&["census", "--d", "2", "--e", "3", "--p", "5", "--parallel", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("2,150,186\n"), "{}", stdout(&out));
}
