//! Contract tests for the `tsnorm` binary: output shapes and exit codes.

use std::process::{Command, Output};

fn tsnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsnorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn norm_exact_value() {
    let out = tsnorm(&["norm", "--space", "t", "--expr", "sum(e,4,7)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn norm_json_format() {
    let out = tsnorm(&[
        "norm", "--space", "t", "--expr", "e1 + 1/4*e2", "--format", "json", "--witness",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], serde_json::json!("1"));
    assert_eq!(v["engine"], serde_json::json!("T"));
    assert!(v["witness"].is_object());
}

#[test]
fn norm_float_spaces_accept_exact_exprs() {
    let out = tsnorm(&["norm", "--space", "s", "--expr", "e1 + e2"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 2.0 / 3f64.log2()).abs() < 1e-9);
}

#[test]
fn bad_expression_exits_2() {
    let out = tsnorm(&["norm", "--space", "t", "--expr", "e0 + banana"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_mode_on_float_space_exits_3() {
    let out = tsnorm(&[
        "norm", "--space", "y", "--expr", "e1", "--precision", "exact",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_experiment_exits_2() {
    let out = tsnorm(&["experiment", "does-not-exist"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_norm_from_file() {
    let dir = std::env::temp_dir().join("tsnorm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("permissible.json");
    std::fs::write(
        &path,
        r#"{"k":3,"entries":[[1,2,1.0],[2,4,1.0],[3,6,1.0]]}"#,
    )
    .unwrap();
    let out = tsnorm(&["norm", "--space", "xk", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 3f64.powf(0.25)).abs() < 1e-4);
}

#[test]
fn experiment_csv_has_fixed_columns() {
    let out = tsnorm(&[
        "experiment", "thm43", "--format", "csv", "--workers", "2",
    ]);
    assert!(out.status.success(), "thm43 should pass");
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "experiment,cell,param_json,value,target,tol,pass,seconds"
    );
    assert!(text.lines().any(|l| l.contains("13/8")));
    assert!(text.lines().any(|l| l.contains("7/4")));
}
