// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Canned sweeps behind `wqed figure`. Each figure writes one or more CSV
//! files and a `manifest.json` listing them.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde_json::json;

use crate::config::{
    AxisConfig, Direction, DriveConfig, Observable, ParamsConfig, Real, RunConfig, Scale,
    Variable,
};
use crate::output::save_csv;
use crate::sweep::run_sweep;

pub const FIGURES: [&str; 6] = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

fn params(delta_a: f64, delta_b: f64, j: f64, theta: f64, phi: f64) -> ParamsConfig {
    ParamsConfig {
        delta_a,
        delta_b,
        j,
        theta: Real(theta),
        phi: Real(phi),
        ..ParamsConfig::default()
    }
}

fn power_axis(from: f64, points: usize) -> AxisConfig {
    AxisConfig::range(Variable::Power, from, 10.0, points, Scale::Log)
}

fn run(
    params: ParamsConfig,
    sweep: AxisConfig,
    grid: Option<AxisConfig>,
    outputs: &[Observable],
    direction: Direction,
) -> RunConfig {
    RunConfig {
        params,
        drive: DriveConfig::default(),
        sweep: Some(sweep),
        grid,
        outputs: outputs.to_vec(),
        direction,
    }
}

/// The sweeps behind one figure, keyed by output file stem.
pub fn preset(name: &str) -> Option<Vec<(String, RunConfig)>> {
    use Observable::*;
    let out = match name {
        "fig2" => vec![(
            "fig2".into(),
            run(
                params(0.5, 0.5, 1.0, 18.0 * PI / 25.0, 9.0 * PI / 25.0),
                power_axis(1e-3, 200),
                Some(AxisConfig::list(Variable::Exchange, &[0.0, 1.0])),
                &[Tc, Tinc, T],
                Direction::Both,
            ),
        )],
        "fig3" => vec![(
            "fig3".into(),
            run(
                params(0.5, 0.5, 1.0, PI, PI / 4.0),
                power_axis(1e-3, 200),
                Some(AxisConfig::list(Variable::Theta, &[PI, 3.0 * PI / 4.0])),
                &[Tc, T],
                Direction::Both,
            ),
        )],
        "fig4" => [("fig4_antisym", -0.5), ("fig4_sym", 0.5)]
            .into_iter()
            .map(|(stem, db)| {
                (
                    stem.into(),
                    run(
                        params(0.5, db, 1.0, 0.0, 0.0),
                        AxisConfig::periodic(Variable::Phi, 100),
                        Some(AxisConfig::periodic(Variable::Theta, 100)),
                        &[Purity],
                        Direction::Forward,
                    ),
                )
            })
            .collect(),
        "fig5" => {
            let pj = |prm: ParamsConfig| {
                run(
                    prm,
                    AxisConfig::range(Variable::Power, 0.0, 2.0, 61, Scale::Linear),
                    Some(AxisConfig::range(Variable::Exchange, 0.0, 2.0, 61, Scale::Linear)),
                    &[Concurrence],
                    Direction::Both,
                )
            };
            let scan = |j: f64, thetas: &[f64]| {
                run(
                    params(0.0, 0.0, j, 0.0, PI),
                    AxisConfig::range(Variable::Delta, -3.0, 3.0, 241, Scale::Linear),
                    Some(AxisConfig::list(Variable::Theta, thetas)),
                    &[T],
                    Direction::Forward,
                )
            };
            vec![
                (
                    "fig5_sym".into(),
                    pj(params(0.5, 0.5, 0.0, 9.0 * PI / 25.0, 9.0 * PI / 50.0)),
                ),
                (
                    "fig5_antisym".into(),
                    pj(params(0.5, -0.5, 0.0, 9.0 * PI / 10.0, PI / 10.0)),
                ),
                ("fig5_detuning_j0".into(), scan(0.0, &[0.0])),
                (
                    "fig5_detuning".into(),
                    scan(1.0, &[3.0 * PI / 2.0, 2.0 * PI / 3.0]),
                ),
            ]
        }
        "fig6" => vec![(
            "fig6".into(),
            run(
                params(0.5, -0.5, 0.0, 5.0 * PI / 4.0, 3.0 * PI / 4.0),
                power_axis(0.02, 200),
                Some(AxisConfig::list(Variable::Exchange, &[0.0, 0.5, 1.0])),
                &[G2T, G2R],
                Direction::Forward,
            ),
        )],
        "fig7" => vec![(
            "fig7".into(),
            run(
                params(0.5, 0.5, 0.0, 5.0 * PI / 4.0, 3.0 * PI / 4.0),
                power_axis(0.02, 200),
                Some(AxisConfig::list(Variable::Exchange, &[0.0, 1.0])),
                &[G2T, G2R],
                Direction::Both,
            ),
        )],
        _ => return None,
    };
    Some(out)
}

#[derive(Debug, Clone)]
pub struct FigureReport {
    pub files: Vec<PathBuf>,
    pub manifest: PathBuf,
    /// Rows with at least one failed evaluation, over all files.
    pub failures: usize,
}

/// Runs every sweep of figure `name` and writes the CSVs into `dir`.
pub fn write_figure(name: &str, dir: &Path, workers: Option<usize>) -> anyhow::Result<FigureReport> {
    let sweeps = preset(name).ok_or_else(|| {
        anyhow::anyhow!("unknown figure {name:?}; expected one of {}", FIGURES.join(", "))
    })?;
    std::fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    let mut entries = Vec::new();
    let mut failures = 0;
    for (stem, cfg) in sweeps {
        let result = run_sweep(&cfg, workers)?;
        let path = dir.join(format!("{stem}.csv"));
        save_csv(&path, &result)?;
        let failed = result.failures();
        failures += failed;
        let config: serde_json::Value = serde_json::from_str(&cfg.to_json())?;
        entries.push(json!({
            "file": format!("{stem}.csv"),
            "rows": result.rows.len(),
            "failed_rows": failed,
            "config": config,
        }));
        files.push(path);
    }
    let manifest = dir.join("manifest.json");
    let doc = json!({
        "figure": name,
        "version": env!("CARGO_PKG_VERSION"),
        "files": entries,
    });
    std::fs::write(&manifest, serde_json::to_string_pretty(&doc)? + "\n")?;
    Ok(FigureReport {
        files,
        manifest,
        failures,
    })
}
