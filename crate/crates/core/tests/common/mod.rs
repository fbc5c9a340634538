// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wqed_core::{c64, CMatrix, DensityMatrix, Drive, Port, SystemParams, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn params(da: f64, db: f64, j: f64, theta: f64, phi: f64) -> SystemParams {
    SystemParams::builder()
        .detunings(da, db)
        .exchange(j, theta)
        .phi(phi)
        .build()
        .unwrap()
}

pub fn fwd(p: f64) -> Drive {
    Drive::from_power(Port::Forward, p).unwrap()
}

pub fn bwd(p: f64) -> Drive {
    Drive::from_power(Port::Backward, p).unwrap()
}

/// Random lossless parameter set with symmetric or free detunings.
pub fn random_params(r: &mut ChaCha8Rng, symmetric: bool) -> SystemParams {
    let da = r.random_range(-1.5..1.5);
    let db = if symmetric {
        da
    } else {
        r.random_range(-1.5..1.5)
    };
    params(
        da,
        db,
        r.random_range(0.0..2.0),
        r.random_range(0.0..TAU),
        r.random_range(0.0..TAU),
    )
}

/// Random parameters with extra losses and a phase kept away from `nπ`.
pub fn random_nondegenerate(r: &mut ChaCha8Rng) -> SystemParams {
    let phi = r.random_range(0.15..PI - 0.15) + if r.random_bool(0.5) { PI } else { 0.0 };
    SystemParams::builder()
        .detunings(r.random_range(-1.5..1.5), r.random_range(-1.5..1.5))
        .exchange(r.random_range(0.0..2.0), r.random_range(0.0..TAU))
        .phi(phi)
        .losses(r.random_range(0.0..0.3), r.random_range(0.0..0.3))
        .build()
        .unwrap()
}

pub fn random_state(r: &mut ChaCha8Rng) -> DensityMatrix {
    let a = CMatrix::from_fn(4, 4, |_, _| {
        c64(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
    });
    DensityMatrix::from_unnormalized(&(&a * &a.adjoint())).unwrap()
}

pub fn random_hermitian(r: &mut ChaCha8Rng) -> CMatrix {
    let a = CMatrix::from_fn(4, 4, |_, _| {
        c64(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
    });
    a.hermitian_part()
}

pub fn is_hygienic(rho: &DensityMatrix) -> bool {
    DensityMatrix::new(rho.matrix().clone()).is_ok()
}

pub fn zero() -> C64 {
    c64(0.0, 0.0)
}

pub fn log_grid(from: f64, to: f64, n: usize) -> Vec<f64> {
    let (a, b) = (from.ln(), to.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
