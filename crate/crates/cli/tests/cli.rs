use std::process::{Command, Output};

use serde_json::Value;

fn charp(problem: &str, extra: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("problem.json");
    std::fs::write(&path, problem).unwrap();
    Command::new(env!("CARGO_BIN_EXE_charp"))
        .args(["--input", path.to_str().unwrap(), "--json"])
        .args(extra)
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn descent_of_t_dt() {
    let out = charp(r#"{"mode":"descent","p":2,"d":1,"payload":{"connection":{"A":[[[{"terms":[{"exp":[1],"coeff":1}]}]]]}}}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["identity_ii"], Value::Bool(true));
    // chi'' = T + (t' + 1) omega' over F_2
    let terms = r["result"]["chi2prime"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
}

#[test]
fn spectral_generators_for_rank_two_surface() {
    let problem = r#"{"mode":"spectral","field":{"p":5},"d":2,"payload":{"charpoly":{"a":[[],
        [{"exp":[1,0],"omega_exp":[2,0],"coeff":-1},{"exp":[0,1],"omega_exp":[1,1],"coeff":-1},{"exp":[0,0],"omega_exp":[0,2],"coeff":-3}]]}}}"#;
    let r = report(&charp(problem, &[]));
    assert_eq!(r["result"]["ideal"]["count"], 3);
    assert_eq!(r["verified"], Value::Bool(true));
}

#[test]
fn pcurv_witness_and_cartier_path() {
    let out = charp(r#"{"mode":"pcurv","p":3,"d":1,"payload":{"connection":{"A":[[[{"terms":[{"exp":[2],"coeff":1}]}]]]}}}"#, &[]);
    let r = report(&out);
    assert_eq!(r["result"]["paths_agree"], Value::Bool(true));
    let psi = &r["result"]["psi"][0][0][0]["terms"];
    assert_eq!(psi.as_array().unwrap().len(), 2);
}

#[test]
fn azumaya_and_correspondence() {
    let out = charp(r#"{"mode":"azumaya","p":2,"d":1,"payload":{"section":[{"terms":[{"exp":[1],"coeff":1}]}]},"degree_bound":2}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["end_rank"], 4);

    let out = charp(r#"{"mode":"correspond","p":3,"d":1,"payload":{"higgs":{"theta":[[[0,2],[1,0]]]}}}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["verdict"], "found");
}

#[test]
fn cartier_both_directions() {
    let r = report(&charp(r#"{"mode":"cartier","p":2,"d":1,"payload":{"higgs":{"theta":[[[1]]]}}}"#, &[]));
    let a = &r["result"]["connection"]["A"][0][0][0]["terms"];
    assert_eq!(a[0]["coeff"], serde_json::json!([1]));
    let r = report(&charp(r#"{"mode":"cartier","p":2,"d":1,"payload":{"connection":{"A":[[[1]]]}}}"#, &[]));
    assert_eq!(r["result"]["theta"]["theta"][0][0][0]["terms"][0]["coeff"], serde_json::json!([1]));
}

#[test]
fn exit_codes() {
    assert_eq!(charp("not json", &[]).status.code(), Some(1));
    assert_eq!(charp(r#"{"mode":"descent","p":4,"d":1,"payload":{}}"#, &[]).status.code(), Some(1));
    assert_eq!(charp(r#"{"mode":"selftest"}"#, &[]).status.code(), Some(1));
    // a non-flat connection is an input error, not a verification failure
    let nonflat = r#"{"mode":"descent","p":2,"d":2,"payload":{"connection":{"A":[
        [[0,{"terms":[{"exp":[0,1],"coeff":1}]}],[0,0]], [[0,0],[0,0]]]}}}"#;
    assert_eq!(charp(nonflat, &[]).status.code(), Some(1));
    let unliftable = r#"{"mode":"azumaya","p":2,"d":1,"payload":{"section":[{"terms":[{"exp":[1],"coeff":1}]}]}}"#;
    assert_eq!(charp(unliftable, &["--degree-bound", "0"]).status.code(), Some(1));
}
