// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Evaluation of single points and of one- or two-axis sweeps.

use rayon::prelude::*;
use wqed_core::observables::{concurrence, g2_zero, port_intensities, purity, Channel};
use wqed_core::steady::solve;
use wqed_core::{Drive, Port, PortIntensities, SystemParams};

use crate::config::{ConfigError, Observable, RunConfig, Variable};

/// Observables and diagnostics for one drive direction at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct PortResult {
    pub port: Port,
    /// One entry per requested observable; `None` where evaluation failed.
    pub values: Vec<Option<f64>>,
    pub kernel_dim: Option<usize>,
    pub residual: Option<f64>,
    /// All failure messages for this point, joined with `"; "`.
    pub error: Option<String>,
}

impl PortResult {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }

    pub fn get(&self, outputs: &[Observable], o: Observable) -> Option<f64> {
        let i = outputs.iter().position(|&x| x == o)?;
        self.values[i]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    /// `(variable, value)` for each swept axis, outer axis first.
    pub coords: Vec<(Variable, f64)>,
    pub ports: Vec<PortResult>,
}

impl Row {
    pub fn failed(&self) -> bool {
        self.ports.iter().any(PortResult::failed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: RunConfig,
    pub rows: Vec<Row>,
}

impl SweepResult {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.failed()).count()
    }
}

fn record(errors: &mut Vec<String>, e: impl ToString) {
    let msg = e.to_string();
    if !errors.contains(&msg) {
        errors.push(msg);
    }
}

fn failed_port(port: Port, n: usize, msg: String) -> PortResult {
    PortResult {
        port,
        values: vec![None; n],
        kernel_dim: None,
        residual: None,
        error: Some(msg),
    }
}

/// Solves the steady state for one drive direction and evaluates `outputs`.
pub fn evaluate(params: &SystemParams, power: f64, port: Port, outputs: &[Observable]) -> PortResult {
    let drive = match Drive::from_power(port, power) {
        Ok(d) => d,
        Err(e) => return failed_port(port, outputs.len(), e.to_string()),
    };
    let ss = match solve(params, &drive) {
        Ok(ss) => ss,
        Err(e) => return failed_port(port, outputs.len(), e.to_string()),
    };
    let mut errors = Vec::new();
    let mut intensities: Option<Option<PortIntensities>> = None;
    let mut values = Vec::with_capacity(outputs.len());
    for &o in outputs {
        let v = if o.is_intensity() {
            let pi = *intensities.get_or_insert_with(|| {
                port_intensities(&ss.rho, params, &drive)
                    .map_err(|e| record(&mut errors, e))
                    .ok()
            });
            pi.map(|i| match o {
                Observable::T => i.t,
                Observable::Tc => i.t_c,
                Observable::Tinc => i.t_inc,
                Observable::R => i.r,
                Observable::Rc => i.r_c,
                _ => i.r_inc,
            })
        } else {
            let r = match o {
                Observable::Purity => Ok(purity(&ss.rho)),
                Observable::Concurrence => concurrence(&ss.rho),
                Observable::G2T => g2_zero(&ss.rho, params, &drive, Channel::Transmit),
                _ => g2_zero(&ss.rho, params, &drive, Channel::Reflect),
            };
            r.map_err(|e| record(&mut errors, format!("{o}: {e}"))).ok()
        };
        values.push(v);
    }
    PortResult {
        port,
        values,
        kernel_dim: Some(ss.kernel_dim),
        residual: Some(ss.residual),
        error: (!errors.is_empty()).then(|| errors.join("; ")),
    }
}

fn evaluate_cell(cfg: &RunConfig, coords: Vec<(Variable, f64)>) -> Row {
    let ports = cfg.direction.ports();
    let ports = match cfg.point(&coords) {
        Ok((params, power)) => ports
            .iter()
            .map(|&port| evaluate(&params, power, port, &cfg.outputs))
            .collect(),
        Err(e) => ports
            .iter()
            .map(|&port| failed_port(port, cfg.outputs.len(), e.to_string()))
            .collect(),
    };
    Row { coords, ports }
}

/// Sweep coordinates in output order: outer axis first, grid inner.
pub fn cells(cfg: &RunConfig) -> Result<Vec<Vec<(Variable, f64)>>, ConfigError> {
    let g2 = cfg.wants_g2();
    let Some(sweep) = &cfg.sweep else {
        return Ok(vec![Vec::new()]);
    };
    let outer = sweep.samples(g2)?;
    let inner = match &cfg.grid {
        Some(grid) => Some((grid.variable, grid.samples(g2)?)),
        None => None,
    };
    let mut out = Vec::new();
    for &x in &outer {
        match &inner {
            Some((var, ys)) => {
                for &y in ys {
                    out.push(vec![(sweep.variable, x), (*var, y)]);
                }
            }
            None => out.push(vec![(sweep.variable, x)]),
        }
    }
    Ok(out)
}

/// Evaluates the base point of `cfg`, ignoring any sweep axes.
pub fn run_point(cfg: &RunConfig) -> Result<SweepResult, ConfigError> {
    let mut cfg = cfg.clone();
    cfg.sweep = None;
    cfg.grid = None;
    cfg.validate()?;
    let row = evaluate_cell(&cfg, Vec::new());
    Ok(SweepResult { config: cfg, rows: vec![row] })
}

/// Evaluates every sweep cell on `workers` threads (all cores if `None`).
/// Rows come back in sweep order regardless of the thread count.
pub fn run_sweep(cfg: &RunConfig, workers: Option<usize>) -> Result<SweepResult, ConfigError> {
    cfg.validate()?;
    let cells = cells(cfg)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(ConfigError::Invalid("workers must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| ConfigError::Invalid(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        cells
            .into_par_iter()
            .map(|c| evaluate_cell(cfg, c))
            .collect()
    });
    Ok(SweepResult {
        config: cfg.clone(),
        rows,
    })
}
