// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wqed::config::{parse_angle, Direction, Observable, Real, RunConfig, Variable};

#[test]
fn defaults() {
    let cfg = RunConfig::from_json("{}").unwrap();
    assert_eq!(cfg.params.gamma, 1.0);
    assert_eq!(cfg.drive.power().unwrap(), 1.0);
    assert_eq!(cfg.direction, Direction::Forward);
    let names: Vec<_> = cfg.outputs.iter().map(|o| o.name()).collect();
    assert_eq!(names, ["T", "T_c", "T_inc", "R", "R_c", "R_inc"]);
}

#[test]
fn angles_as_strings_or_numbers() {
    let cfg = RunConfig::from_json(r#"{"params": {"theta": "18pi/25", "phi": 0.5}}"#).unwrap();
    assert_eq!(cfg.params.theta, Real(18.0 * PI / 25.0));
    assert_eq!(cfg.params.phi, Real(0.5));
    assert!(RunConfig::from_json(r#"{"params": {"theta": "half"}}"#).is_err());
}

#[test]
fn overrides_by_dotted_path() {
    let set = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let cfg = RunConfig::from_json_with(
        r#"{"params": {"J": 1.0}}"#,
        &set(&["params.J=0.25", "params.theta=3pi/4", "drive.p=2", "direction=both"]),
    )
    .unwrap();
    assert_eq!(cfg.params.j, 0.25);
    assert_eq!(cfg.params.theta, Real(0.75 * PI));
    assert_eq!(cfg.drive.power().unwrap(), 2.0);
    assert_eq!(cfg.direction, Direction::Both);

    let cfg = RunConfig::from_json_with(
        "{}",
        &set(&["sweep.variable=J", "sweep.from=0", "sweep.to=2", "sweep.points=5", r#"outputs=["purity"]"#]),
    )
    .unwrap();
    assert_eq!(cfg.sweep.unwrap().variable, Variable::Exchange);
    assert_eq!(cfg.outputs, [Observable::Purity]);

    assert!(RunConfig::from_json_with("{}", &set(&["params.J"])).is_err());
    assert!(RunConfig::from_json_with("{}", &set(&["params.J.x=1"])).is_err());
    assert!(RunConfig::from_json_with("{}", &set(&["params..J=1"])).is_err());
    assert!(RunConfig::from_json_with("{}", &set(&["params.bogus=1"])).is_err());
}

#[test]
fn alpha_and_p_are_exclusive() {
    let cfg = RunConfig::from_json(r#"{"drive": {"alpha": 0.5}}"#).unwrap();
    assert_eq!(cfg.drive.power().unwrap(), 0.25);
    assert!(RunConfig::from_json(r#"{"drive": {"alpha": 0.5, "p": 1}}"#).is_err());
}

#[test]
fn rejects_malformed_configs() {
    for bad in [
        r#"{"outputs": []}"#,
        r#"{"outputs": ["T", "T"]}"#,
        r#"{"outputs": ["X"]}"#,
        r#"{"grid": {"variable": "J", "values": [0]}}"#,
        r#"{"sweep": {"variable": "J", "values": [0]}, "grid": {"variable": "J", "values": [1]}}"#,
        r#"{"sweep": {"variable": "J", "from": 0, "to": 1, "points": 1}}"#,
        r#"{"sweep": {"variable": "p", "from": 0, "to": 1, "points": 3, "scale": "log"}}"#,
        r#"{"sweep": {"variable": "J", "values": [0], "points": 3}}"#,
        r#"{"sweep": {"variable": "J", "values": []}}"#,
        r#"{"sweep": {"variable": "J", "to": 1, "points": 3}}"#,
        r#"{"direction": "sideways"}"#,
        r#"{"unknown": 1}"#,
    ] {
        assert!(RunConfig::from_json(bad).is_err(), "{bad}");
    }
}

#[test]
fn config_round_trips_through_json() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/power_sweep.json")).unwrap();
    let cfg = RunConfig::from_json(&text).unwrap();
    assert_eq!(RunConfig::from_json(&cfg.to_json()).unwrap(), cfg);
}

#[test]
fn rational_multiples_of_pi() {
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let (n, d) = (r.random_range(-40i32..40), r.random_range(1i32..40));
        let v = parse_angle(&format!("{n}pi/{d}")).unwrap();
        assert!((v - n as f64 * PI / d as f64).abs() <= 1e-15 * (1.0 + v.abs()), "{n}pi/{d}");
    }
}

#[test]
fn plain_numbers_parse_exactly() {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..500 {
        let x: f64 = r.random_range(-1e6..1e6);
        assert_eq!(parse_angle(&format!("{x}")).unwrap(), x);
    }
}
