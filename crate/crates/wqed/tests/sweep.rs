// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{PI, TAU};

use wqed::config::{AxisConfig, Direction, Observable, RunConfig, Scale, Variable};
use wqed::output::{columns, format_float, to_json, write_csv};
use wqed::presets::preset;
use wqed::sweep::{cells, run_point, run_sweep};
use wqed_core::Port;

fn config(name: &str) -> RunConfig {
    let path = format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"));
    RunConfig::load(path.as_ref(), &[]).unwrap()
}

fn csv_text(cfg: &RunConfig, workers: Option<usize>) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, &run_sweep(cfg, workers).unwrap()).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn transparent_point() {
    let res = run_point(&config("transparent.json")).unwrap();
    let outputs = &res.config.outputs;
    assert_eq!(res.failures(), 0);
    for p in &res.rows[0].ports {
        assert!((p.get(outputs, Observable::T).unwrap() - 1.0).abs() < 1e-8);
        assert!(p.get(outputs, Observable::R).unwrap().abs() < 1e-8);
        assert!((p.get(outputs, Observable::Purity).unwrap() - 1.0).abs() < 1e-8);
        assert!((p.get(outputs, Observable::Concurrence).unwrap() - 8.0 / 11.0).abs() < 1e-6);
        assert_eq!(p.kernel_dim, Some(1));
        assert!(p.residual.unwrap() < 1e-10);
    }
}

#[test]
fn zero_drive_reports_normalization_error() {
    let mut cfg = config("transparent.json");
    cfg.drive.p = None;
    cfg.drive.alpha = Some(0.0);
    let res = run_point(&cfg).unwrap();
    assert_eq!(res.failures(), 1);
    for p in &res.rows[0].ports {
        assert_eq!(p.error.as_deref(), Some("p=0 normalization undefined"));
        assert_eq!(p.get(&res.config.outputs, Observable::T), None);
        // state observables survive
        assert!((p.get(&res.config.outputs, Observable::Purity).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn empty_reflection_is_a_failed_g2() {
    let mut cfg = config("transparent.json");
    cfg.outputs = vec![Observable::G2T, Observable::G2R];
    let res = run_point(&cfg).unwrap();
    let p = &res.rows[0].ports[0];
    assert!(p.values[0].is_some());
    assert_eq!(p.values[1], None);
    assert!(p.error.as_deref().unwrap().starts_with("g2_R: empty channel"));
}

#[test]
fn invalid_physical_parameters_fail_the_point() {
    let mut cfg = config("transparent.json");
    cfg.params.gamma = -1.0;
    let res = run_point(&cfg).unwrap();
    assert_eq!(res.failures(), 1);
    assert!(res.rows[0].ports[0].error.as_deref().unwrap().contains("gamma_wg"));
}

#[test]
fn swap_identity_between_ports() {
    let theta = 18.0 * PI / 25.0;
    let mut cfg = config("power_sweep.json");
    cfg.drive.p = Some(0.7);
    cfg.direction = Direction::Both;
    cfg.params.theta.0 = theta;
    let a = run_point(&cfg).unwrap();
    cfg.params.theta.0 = TAU - theta;
    let b = run_point(&cfg).unwrap();
    let outputs = &a.config.outputs;
    for o in outputs {
        let f = a.rows[0].ports[0].get(outputs, *o).unwrap();
        let back = b.rows[0].ports[1].get(outputs, *o).unwrap();
        assert!((f - back).abs() < 1e-9, "{o}: {f} vs {back}");
    }
}

#[test]
fn cells_run_outer_axis_first() {
    let cfg = config("power_sweep.json");
    let c = cells(&cfg).unwrap();
    assert_eq!(c.len(), 100);
    assert_eq!(c[0], vec![(Variable::Power, 1e-3), (Variable::Exchange, 0.0)]);
    assert_eq!(c[1], vec![(Variable::Power, 1e-3), (Variable::Exchange, 1.0)]);
    assert_eq!(c[99], vec![(Variable::Power, 10.0), (Variable::Exchange, 1.0)]);
}

#[test]
fn column_order() {
    let res = run_point(&config("transparent.json")).unwrap();
    assert_eq!(
        columns(&res),
        [
            "T_F", "T_B", "R_F", "R_B", "purity_F", "purity_B", "concurrence_F", "concurrence_B",
            "kernel_dim_F", "kernel_dim_B", "residual_F", "residual_B", "error_F", "error_B"
        ]
    );
    let mut cfg = config("g2_sweep.json");
    cfg.sweep.as_mut().unwrap().points = Some(2);
    let res = run_sweep(&cfg, Some(1)).unwrap();
    assert_eq!(
        columns(&res),
        ["p", "J", "g2_T_F", "g2_R_F", "kernel_dim_F", "residual_F", "error_F"]
    );
    // power sweeps for g2 start at the plotting floor
    assert_eq!(res.rows[0].coords[0], (Variable::Power, 0.02));
}

#[test]
fn csv_header_block_carries_the_config() {
    let cfg = config("power_sweep.json");
    let text = csv_text(&cfg, Some(2));
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# wqed "));
    let json = lines[1].strip_prefix("# config: ").unwrap();
    assert_eq!(RunConfig::from_json(json).unwrap(), cfg);
    assert_eq!(lines[2], "p,J,T_c_F,T_c_B,T_inc_F,T_inc_B,T_F,T_B,kernel_dim_F,kernel_dim_B,residual_F,residual_B,error_F,error_B");
    assert_eq!(lines.len(), 3 + 100);
    let first: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(first[0], "0.001");
    assert_eq!(first[1], "0");
    assert_eq!(&first[12..], ["", ""]);
}

#[test]
fn sweeps_are_deterministic_and_thread_count_independent() {
    let mut cfg = config("power_sweep.json");
    cfg.outputs.push(Observable::Concurrence);
    let serial = csv_text(&cfg, Some(1));
    assert_eq!(serial, csv_text(&cfg, Some(1)));
    assert_eq!(serial, csv_text(&cfg, Some(4)));
    assert_eq!(serial, csv_text(&cfg, None));
}

#[test]
fn zero_workers_is_rejected() {
    assert!(run_sweep(&config("power_sweep.json"), Some(0)).is_err());
}

#[test]
fn json_mirror_matches_csv() {
    let mut cfg = config("transparent.json");
    cfg.drive.p = Some(0.0);
    let res = run_point(&cfg).unwrap();
    let j = to_json(&res);
    let cols = j["columns"].as_array().unwrap();
    let row = j["rows"][0].as_array().unwrap();
    assert_eq!(cols.len(), row.len());
    assert!(row[0].is_null());
    assert_eq!(row[row.len() - 1], "p=0 normalization undefined");
    let purity = cols.iter().position(|c| c == "purity_F").unwrap();
    assert_eq!(format_float(row[purity].as_f64().unwrap()), format_float(res.rows[0].ports[0].values[2].unwrap()));
}

#[test]
fn detuning_axes() {
    let cfg = RunConfig {
        outputs: vec![Observable::T],
        sweep: Some(AxisConfig::range(Variable::DeltaAntisym, -1.0, 1.0, 3, Scale::Linear)),
        ..RunConfig::default()
    };
    let (p, _) = cfg.point(&[(Variable::DeltaAntisym, 0.4)]).unwrap();
    assert_eq!((p.delta_a(), p.delta_b()), (0.4, -0.4));
    let (p, _) = cfg.point(&[(Variable::Delta, 0.4)]).unwrap();
    assert_eq!((p.delta_a(), p.delta_b()), (0.4, 0.4));
}

#[test]
fn rank_deficient_concurrence_cell() {
    // eigenvalue certification once cycled here on a rounding-level column
    let cfg = preset("fig5").unwrap()[1].1.clone();
    let cell = cells(&cfg)
        .unwrap()
        .into_iter()
        .find(|c| (c[0].1 - 1.6).abs() < 1e-12 && (c[1].1 - 1.0 / 6.0).abs() < 1e-12)
        .unwrap();
    let (params, power) = cfg.point(&cell).unwrap();
    let r = wqed::sweep::evaluate(&params, power, Port::Forward, &[Observable::Concurrence]);
    assert_eq!(r.error, None);
    let c = r.values[0].unwrap();
    assert!((0.0..=1.0).contains(&c));
}
