// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! `wqed verify`: a seeded self-check of the solver against its closed-form
//! references.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wqed_core::analytics::{
    analytic_t_j0, classify_pure_state, closed_form_concurrence, verify_symmetries, weak_drive_tc,
};
use wqed_core::observables::{concurrence, port_intensities, purity};
use wqed_core::operators::{build_liouvillian, build_liouvillian_jump_form, directional_couplings};
use wqed_core::steady::solve;
use wqed_core::{Drive, Port, SystemParams};

pub const SEED: u64 = 20260101;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn params(da: f64, db: f64, j: f64, theta: f64, phi: f64) -> anyhow::Result<SystemParams> {
    Ok(SystemParams::builder()
        .detunings(da, db)
        .exchange(j, theta)
        .phi(phi)
        .build()?)
}

fn random_params(r: &mut ChaCha8Rng, symmetric: bool) -> anyhow::Result<SystemParams> {
    let da = r.random_range(-2.0..2.0);
    let db = if symmetric { da } else { r.random_range(-2.0..2.0) };
    params(
        da,
        db,
        r.random_range(0.0..2.0),
        r.random_range(0.0..TAU),
        r.random_range(0.0..TAU),
    )
}

fn check(name: &'static str, worst: f64, tol: f64, what: String) -> Check {
    Check {
        name,
        passed: worst <= tol,
        detail: format!("{what}, max deviation {worst:.2e} (tol {tol:.0e})"),
    }
}

fn generators(r: &mut ChaCha8Rng) -> anyhow::Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..40 {
        let p = random_params(r, false)?;
        let d = Drive::from_power(Port::Forward, r.random_range(0.0..10.0))?;
        let diff = build_liouvillian(&p, &d).matrix() - build_liouvillian_jump_form(&p, &d).matrix();
        worst = worst.max(diff.max_abs());
    }
    Ok(check("generator forms agree", worst, 1e-12, "40 draws".into()))
}

fn symmetries(r: &mut ChaCha8Rng) -> anyhow::Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let p = random_params(r, true)?;
        let d = Drive::from_power(Port::Forward, r.random_range(0.05..5.0))?;
        worst = worst.max(verify_symmetries(&p, &d)?.max_residual());
    }
    Ok(check("time reversal and qubit swap", worst, 1e-8, "10 symmetric draws".into()))
}

fn pure_cases() -> anyhow::Result<Vec<SystemParams>> {
    let mut out = Vec::new();
    for (phi, theta) in [(0.0, PI / 3.0), (PI, 2.0 * PI / 3.0), (PI, 4.0 * PI / 3.0)] {
        let sgn = if phi == 0.0 { 1.0 } else { -1.0 };
        for j in [0.6, 1.0, 1.8] {
            let delta = sgn * j * f64::cos(theta);
            out.push(params(delta, delta, j, theta, phi)?);
        }
    }
    for phi in [0.0, PI] {
        for delta in [0.5, -1.0] {
            out.push(params(delta, -delta, 1.0, FRAC_PI_2, phi)?);
        }
    }
    Ok(out)
}

fn pure_states() -> anyhow::Result<[Check; 3]> {
    let (mut dark, mut transp, mut conc): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for p in pure_cases()? {
        for pw in [0.1, 1.0, 3.0] {
            for port in [Port::Forward, Port::Backward] {
                let d = Drive::from_power(port, pw)?;
                let class = classify_pure_state(&p, &d);
                let expected = class
                    .density_matrix()
                    .ok_or_else(|| anyhow::anyhow!("no pure state predicted at {p:?}"))?;
                let rho = solve(&p, &d)?.rho;
                dark = dark.max(rho.trace_distance(&expected)?);
                let i = port_intensities(&rho, &p, &d)?;
                transp = transp
                    .max((i.t - 1.0).abs())
                    .max(i.r.abs())
                    .max((purity(&rho) - 1.0).abs());
                conc = conc.max((concurrence(&rho)? - closed_form_concurrence(&p, &d)?).abs());
            }
        }
    }
    let what = "13 parameter sets x 3 powers x 2 ports".to_string();
    Ok([
        check("pure dark steady states", dark, 1e-6, what.clone()),
        check("transparency (T=1, R=0, purity=1)", transp, 1e-8, what.clone()),
        check("closed-form concurrence", conc, 1e-6, what),
    ])
}

fn transmission_j0(r: &mut ChaCha8Rng) -> anyhow::Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let delta = r.random_range(-3.0..3.0);
        let p = params(delta, delta, 0.0, 0.0, PI)?;
        let d = Drive::from_power(Port::Forward, r.random_range(0.05..5.0))?;
        let t = port_intensities(&solve(&p, &d)?.rho, &p, &d)?.t;
        worst = worst.max((t - analytic_t_j0(delta, &p, &d)).abs());
    }
    Ok(check("J=0, phi=pi transmission formula", worst, 1e-8, "20 draws".into()))
}

fn weak_drive(r: &mut ChaCha8Rng) -> anyhow::Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = random_params(r, false)?;
        let d = Drive::from_power(Port::Forward, 1e-6)?;
        let tc = port_intensities(&solve(&p, &d)?.rho, &p, &d)?.t_c;
        let reference = weak_drive_tc(&p);
        worst = worst.max((tc - reference).abs() / reference);
    }
    Ok(check(
        "weak-drive coherent transmission at p=1e-6",
        worst,
        1e-2,
        "20 draws, relative".into(),
    ))
}

fn one_way(r: &mut ChaCha8Rng) -> anyhow::Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let phi = r.random_range(0.0..TAU);
        let c = directional_couplings(&params(0.0, 0.0, 1.0, phi + FRAC_PI_2, phi)?);
        worst = worst.max(c.b_to_a.norm());
    }
    Ok(check(
        "one-way coupling at theta=phi+pi/2, J=Gamma",
        worst,
        1e-12,
        "20 draws of phi, |A_b->a|".into(),
    ))
}

/// Runs every check with a fixed seed.
pub fn run() -> anyhow::Result<Report> {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    let mut checks = vec![generators(&mut r)?, symmetries(&mut r)?];
    checks.extend(pure_states()?);
    checks.push(transmission_j0(&mut r)?);
    checks.push(weak_drive(&mut r)?);
    checks.push(one_way(&mut r)?);
    Ok(Report { checks })
}
