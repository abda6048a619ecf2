use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn compalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// A fresh path in the temp directory, unique per test and process.
fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("compalg-{}-{name}", std::process::id()))
}

fn build(family: &str, params: &str, name: &str) -> PathBuf {
    let path = temp(name);
    let o = compalg(&[
        "build",
        "--family",
        family,
        "--params",
        params,
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn okubo_analysis() {
    let p = build("okubo", "{}", "p11.json");
    let o = compalg(&["analyze", p.to_str().unwrap()]);
    assert!(o.status.success());
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["partition"], serde_json::json!([8]));
    assert_eq!(report["double_sign"], serde_json::json!([-1, -1]));
    assert_eq!(report["block"]["block"], "D8");
}

#[test]
fn related_j_algebras_are_isomorphic() {
    // κ̂_q with q = (1 + u)/√2 fixes u and sends v to uv.
    let a = build(
        "j",
        r#"{"i":0,"j":0,"a":[0,1,0,0],"b":[0,0,1,0]}"#,
        "ja.json",
    );
    let b = build(
        "j",
        r#"{"i":0,"j":0,"a":[0,1,0,0],"b":[0,0,0,1]}"#,
        "jb.json",
    );
    let w = temp("witness.json");
    let o = compalg(&[
        "iso",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "-o",
        w.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "isomorphic");
    let m: Vec<Vec<f64>> = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!((m.len(), m[0].len()), (8, 8));
}

#[test]
fn different_double_signs_are_reported() {
    let a = build("standard", r#"{"i":0,"j":0}"#, "s00.json");
    let b = build("standard", r#"{"i":0,"j":1}"#, "s01.json");
    let o = compalg(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("not isomorphic"));
}

#[test]
fn verify_passes() {
    let o = compalg(&["verify", "--seed", "42"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_is_deterministic() {
    let a = compalg(&["verify", "--seed", "7", "--format", "csv"]);
    let b = compalg(&["verify", "--seed", "7", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_family_is_a_usage_error() {
    let o = compalg(&["build", "--family", "sedenions"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown family"));
}

#[test]
fn invalid_parameters_are_usage_errors() {
    let o = compalg(&["build", "--family", "p35", "--params", r#"{"i":1,"j":1}"#]);
    assert_eq!(o.status.code(), Some(2));
    let o = compalg(&["build", "--family", "j", "--params", "[1]"]);
    assert_eq!(o.status.code(), Some(2));
    let o = compalg(&["analyze", "/nonexistent/algebra.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn degrees_flag_converts_g_angles() {
    let rad = build(
        "g",
        r#"{"i1":0,"j1":0,"i2":0,"j2":1,"alpha":0.5235987755982988,"beta":0.0}"#,
        "grad.json",
    );
    let deg = temp("gdeg.json");
    let o = compalg(&[
        "build",
        "--family",
        "g",
        "--degrees",
        "--params",
        r#"{"i1":0,"j1":0,"i2":0,"j2":1,"alpha":30,"beta":0}"#,
        "-o",
        deg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let c = |p: &PathBuf| -> Value {
        serde_json::from_str(&stdout(&compalg(&["canon", p.to_str().unwrap()]))).unwrap()
    };
    let (x, y) = (c(&rad), c(&deg));
    assert_eq!(x["block"], "D1133");
    assert!((x["alpha"].as_f64().unwrap() - y["alpha"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn classify_includes_the_canonical_form() {
    let p = build("octonions", "{}", "o.json");
    let o = compalg(&["classify", p.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["block"]["block"], "D17");
    assert_eq!(v["canonical"]["block"], "D17");
}

#[test]
fn enumerate_streams_representatives() {
    let o = compalg(&["enumerate", "--block", "D17"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = compalg(&["enumerate", "--block", "D35", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("block,double_sign,params"));
    assert_eq!(text.lines().count(), 4);
    let o = compalg(&["enumerate", "--block", "D99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tolerance_must_be_positive() {
    let o = compalg(&["--tol", "-1", "enumerate", "--block", "D8"]);
    assert_eq!(o.status.code(), Some(2));
}
