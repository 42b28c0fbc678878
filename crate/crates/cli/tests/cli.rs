use std::process::{Command, Output};

fn dynstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynstab")).args(args).env_remove("DYNSTAB_MAX_N").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn two_point_weight() {
    let out = dynstab(&["compute", "weight", "--n", "2", "--k", "1", "--sigma", "1,2", "--I", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "y(λ+t₁−z₁+y)(t₁−z₂)");
}

#[test]
fn xi_vector() {
    let out = dynstab(&["compute", "xi", "--n", "3", "--k", "1", "--I", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(λ+y)·v{1}");
}

#[test]
fn empty_weight_is_one() {
    let out = dynstab(&["compute", "weight", "--n", "1", "--k", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn json_output_parses() {
    let out = dynstab(&["compute", "xi", "--n", "2", "--k", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["object"], "xi");
    assert!(v["values"]["{2}/2"]["{1}/2"]["num"]["terms"].is_array());
}

#[test]
fn latex_output() {
    let out = dynstab(&["compute", "xi", "--n", "2", "--k", "1", "--I", "2", "--format", "latex"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("\\frac") && s.contains("v_{\\{2\\}}"), "{s}");
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "rmatrix", "--n", "2", "--sigma", "2,1"];
    let a = dynstab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, dynstab(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "weight", "--n", "2", "--k", "3"][..],
        &["compute", "weight", "--n", "9", "--k", "1"],
        &["compute", "weight", "--n", "2", "--k", "1", "--sigma", "1,1"],
        &["compute", "nonsense"],
        &["verify", "nonsense"],
        &["verify", "ybe", "--bogus"],
    ] {
        let out = dynstab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn max_n_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dynstab"))
        .args(["compute", "xi", "--n", "3", "--k", "1"])
        .env("DYNSTAB_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn costly_suite_is_refused() {
    let out = dynstab(&["verify", "rll", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--unsafe"));
}

#[test]
fn verify_ybe_passes() {
    let out = dynstab(&["verify", "ybe"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ybe: pass"));
}

#[test]
fn verify_all_small() {
    let out = dynstab(&["verify", "all", "--n", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).trim_end().ends_with("overall: pass"));
}

#[test]
fn verify_json_report() {
    let out = dynstab(&["verify", "eigen", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let first = if v.is_array() { v[0].clone() } else { v };
    assert_eq!(first["passed"], true);
}
