use std::process::{Command, Output};

fn lpset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    stdout(out)
        .lines()
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

#[test]
fn linset_maximum_scattered() {
    let out = lpset(&["linset", "--p", "3", "--n", "4", "--s", "1", "--theta", "g"]);
    assert!(out.status.success());
    let t = rows(&out);
    assert_eq!(t[0][4], "size");
    assert_eq!(t[1][4], "40");
    assert_eq!(t[1][6], "equal");
    assert_eq!(t[1][7], "true");
    assert_eq!(t[1][8], "1:40");
}

#[test]
fn linset_rejects_norm_one() {
    let out = lpset(&["linset", "--p", "3", "--n", "4", "--s", "1", "--theta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lpset(&["linset", "--p", "3", "--n", "4", "--s", "1", "--theta", "1", "--allow-invalid"]);
    assert!(out.status.success());
    assert_eq!(rows(&out)[1][3], "false");
}

#[test]
fn linset_json() {
    let out = lpset(&["linset", "--p", "2", "--n", "3", "--s", "1", "--theta", "0", "--allow-invalid", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["size"], 7);
    assert_eq!(v["notes"][0], "θ = 0: pseudoregulus type");
}

#[test]
fn equiv_agrees_with_brute_force() {
    let out = lpset(&["equiv", "--p", "5", "--n", "3", "--s", "1", "--theta", "g", "--t", "1", "--delta", "g^3", "--brute-force"]);
    assert!(out.status.success());
    let t = rows(&out);
    assert_eq!(t[1][0], "true");
    assert_eq!(t[1][7], "true");
}

#[test]
fn equiv_json_verdict() {
    let out = lpset(&["equiv", "--p", "3", "--n", "5", "--s", "1", "--theta", "g", "--t", "2", "--delta", "g^3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["equivalent"], false);
}

#[test]
fn equiv_bad_normalization_is_an_error() {
    let out = lpset(&["equiv", "--p", "3", "--n", "4", "--s", "1", "--theta", "g", "--t", "3", "--delta", "g"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn aut_matches_stabilizer_for_n4() {
    let out = lpset(&["aut", "--p", "3", "--n", "4", "--s", "1", "--theta", "g", "--brute-force"]);
    assert!(out.status.success());
    let t = rows(&out);
    assert_eq!(t[1][0], t[1][2]);
    assert_eq!(t[1][5], t[1][0]);
    assert_eq!(t[1][6], "true");
}

#[test]
fn census_grid_and_notes() {
    let out = lpset(&["census", "--p", "2-7", "--r", "1", "--n", "3-5"]);
    assert!(out.status.success());
    let t = rows(&out);
    assert_eq!(
        t[0],
        ["p", "r", "n", "lambda", "epsilon", "lower", "upper", "oracle", "verified", "notes"]
    );
    let cell = |p: &str, n: &str| t.iter().find(|r| r[0] == p && r[2] == n).unwrap().clone();
    assert_eq!(cell("7", "5")[3], "6");
    assert_eq!(cell("3", "4")[3], "1");
    assert!(cell("3", "4")[9].starts_with("r = 1"));
    assert_eq!(cell("3", "4")[5], "-");
    assert!(t.iter().all(|r| r[0] != "2"));
}

#[test]
fn census_brute_force_disagreement_exits_one() {
    let out = lpset(&["census", "--p", "5", "--r", "1", "--n", "3", "--brute-force"]);
    assert_eq!(out.status.code(), Some(1));
    let t = rows(&out);
    assert_eq!(t[1][3], "2");
    assert_eq!(t[1][7], "1");
    assert_eq!(t[1][8], "false");
}

#[test]
fn census_is_deterministic() {
    let args = ["census", "--p", "2,3,5", "--r", "1-3", "--n", "3-6", "--format", "json", "--workers", "1"];
    assert_eq!(lpset(&args).stdout, lpset(&args).stdout);
}

#[test]
fn verify_suites() {
    let out = lpset(&["verify", "--suite", "coeffs"]);
    assert!(out.status.success());
    let out = lpset(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}
