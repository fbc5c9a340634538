// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::{Command, Output};

fn wqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args(args)
        .env_remove("WQED_WORKERS")
        .output()
        .unwrap()
}

fn config(name: &str) -> String {
    format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn point_prints_csv() {
    let o = wqed(&["point", "--config", &config("transparent.json")]);
    assert!(o.status.success());
    let out = stdout(&o);
    let header = out.lines().nth(2).unwrap();
    assert!(header.starts_with("T_F,T_B,R_F,R_B"));
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn point_with_overrides_and_json() {
    let o = wqed(&["point", "--config", &config("transparent.json"), "--set", "params.J=0", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["params"]["J"], 0.0);
}

#[test]
fn failed_points_give_nonzero_exit() {
    let o = wqed(&["point", "--config", &config("transparent.json"), "--set", "drive.p=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p=0 normalization undefined"));
    // the table is still written
    assert!(stdout(&o).lines().nth(3).unwrap().ends_with("p=0 normalization undefined"));
}

#[test]
fn bad_config_is_a_usage_error() {
    let o = wqed(&["point", "--config", &config("transparent.json"), "--set", "params.theta=north"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wqed(&["point", "--config", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_output_is_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str, name: &str| -> PathBuf {
        let out = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_wqed"))
            .args(["sweep", "--config", &config("g2_sweep.json"), "--out"])
            .arg(&out)
            .env("WQED_WORKERS", workers)
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        out
    };
    let a = std::fs::read(run("1", "a.csv")).unwrap();
    let b = std::fs::read(run("3", "b.csv")).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 3 + 120);
}

#[test]
fn sweep_writes_json_mirror() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let json = dir.path().join("s.json");
    let o = Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args(["--workers", "2", "sweep", "--config", &config("power_sweep.json"), "--set", "sweep.points=3"])
        .arg("--out")
        .arg(&csv)
        .arg("--json")
        .arg(&json)
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["columns"][0], "p");
}

#[test]
fn figure_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = wqed(&["figure", "fig6", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("fig6.csv")).unwrap();
    assert_eq!(csv.lines().nth(2).unwrap(), "p,J,g2_T_F,g2_R_F,kernel_dim_F,residual_F,error_F");
    assert_eq!(csv.lines().count(), 3 + 600);
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["figure"], "fig6");
    assert_eq!(m["files"][0]["failed_rows"], 0);

    let o = wqed(&["figure", "fig9", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes() {
    let o = wqed(&["verify"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.lines().count() >= 8);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
}
