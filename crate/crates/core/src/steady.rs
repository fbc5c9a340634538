// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Steady states of the Lindblad generator.
//!
//! The primary route is the kernel of the generator. When the kernel is
//! degenerate (dark subspaces at phase-matched separations) the physical
//! steady state depends on the preparation, so it is obtained by integrating
//! `ρ̇ = L(ρ)` from the initial state until it stops changing.

// Unused when std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::{c64, eig_general, null_space, vec_norm, CMatrix, C64, DEFAULT_KERNEL_TOL};
use crate::operators::{unvectorize, vectorize, Superoperator};
use crate::DensityMatrix;

/// Default fixed RK4 step, in `1/Γ`.
pub const DEFAULT_DT: f64 = 1e-3;
/// Interval between stationarity checks, in `1/Γ`.
pub const CHECK_INTERVAL: f64 = 1.0;
/// Change per check interval below which the evolution counts as stationary.
pub const STATIONARITY_TOL: f64 = 1e-10;
/// Give up on the evolution fallback after this time, in `1/Γ`.
pub const MAX_EVOLUTION_TIME: f64 = 1e4;
/// Bound on `‖L·vec(ρ)‖` for an accepted steady state.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Trace drift that rejects an integration.
pub const TRACE_DRIFT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteadyMethod {
    NullSpace,
    Evolution,
}

#[derive(Debug, Clone)]
pub struct SteadyResult {
    pub rho: DensityMatrix,
    /// Dimension of the numerical kernel of the generator.
    pub kernel_dim: usize,
    pub method: SteadyMethod,
    /// `‖L·vec(ρ)‖`.
    pub residual: f64,
}

/// One classical RK4 step for the linear ODE `v̇ = L·v`, as a matrix:
/// `I + hL + (hL)²/2 + (hL)³/6 + (hL)⁴/24`.
pub fn rk4_step_matrix(l: &Superoperator, h: f64) -> CMatrix {
    let hl = l.matrix().scale(c64(h, 0.0));
    let id = CMatrix::identity(hl.rows());
    let mut acc = id.clone();
    for k in (1..=4).rev() {
        acc = &id + &(&hl * &acc).scale(c64(1.0 / k as f64, 0.0));
    }
    acc
}

fn check_raw(v: &[C64]) -> Result<()> {
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::StepRejected {
            reason: "state became non-finite",
        });
    }
    let n = (v.len() as f64).sqrt().round() as usize;
    let tr: C64 = (0..n).map(|i| v[i * (n + 1)]).sum();
    if (tr - c64(1.0, 0.0)).norm() > TRACE_DRIFT_TOL {
        return Err(Error::StepRejected {
            reason: "trace drifted",
        });
    }
    // Any density matrix has Frobenius norm at most 1.
    if vec_norm(v) > 1.0 + TRACE_DRIFT_TOL {
        return Err(Error::StepRejected {
            reason: "state norm grew",
        });
    }
    Ok(())
}

/// Fixed-step RK4 integration of `ρ̇ = L(ρ)` from `rho0` up to `t_final`.
///
/// The step is shrunk to `t_final/⌈t_final/dt⌉` so the end time is hit
/// exactly. Since the ODE is linear and autonomous, `n` steps are applied as
/// the `n`-th power of the one-step matrix. The result is Hermitized and
/// trace-normalized.
pub fn evolve(
    l: &Superoperator,
    rho0: &DensityMatrix,
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: "must be positive and finite",
        });
    }
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t_final",
            reason: "must be nonnegative and finite",
        });
    }
    if t_final == 0.0 {
        return Ok(rho0.clone());
    }
    let steps = ((t_final / dt) * (1.0 - 1e-12)).ceil().max(1.0);
    let h = t_final / steps;
    let propagator = rk4_step_matrix(l, h).pow(steps as u64);
    let v = propagator.matvec(&vectorize(rho0.matrix()));
    check_raw(&v)?;
    DensityMatrix::from_unnormalized(&unvectorize(&v))
}

/// `‖L·vec(ρ)‖`.
pub fn residual(l: &Superoperator, rho: &DensityMatrix) -> f64 {
    vec_norm(&l.matrix().matvec(&vectorize(rho.matrix())))
}

/// Steady state reached from `|gg⟩⟨gg|`.
pub fn steady_state(l: &Superoperator) -> Result<SteadyResult> {
    steady_state_from(l, &DensityMatrix::ground())
}

/// Steady state of `l`; `initial` only matters when the kernel is degenerate.
pub fn steady_state_from(l: &Superoperator, initial: &DensityMatrix) -> Result<SteadyResult> {
    let kernel = null_space(l.matrix(), DEFAULT_KERNEL_TOL)?;
    let kernel_dim = kernel.len();
    if kernel_dim == 1 {
        let rho = DensityMatrix::from_unnormalized(&unvectorize(&kernel[0]))?;
        let residual = residual(l, &rho);
        return Ok(SteadyResult {
            rho,
            kernel_dim,
            method: SteadyMethod::NullSpace,
            residual,
        });
    }

    let mut result = evolve_to_stationary(l, initial)?;
    result.kernel_dim = kernel_dim;
    Ok(result)
}

/// Integrates from `initial` with the default RK4 step until the state
/// changes by less than [`STATIONARITY_TOL`] over one check interval.
///
/// Fails with [`Error::NotStationary`] after [`MAX_EVOLUTION_TIME`]. The
/// returned `kernel_dim` is 0 since no kernel was computed.
pub fn evolve_to_stationary(l: &Superoperator, initial: &DensityMatrix) -> Result<SteadyResult> {
    let steps = (CHECK_INTERVAL / DEFAULT_DT).round() as u64;
    let chunk = rk4_step_matrix(l, CHECK_INTERVAL / steps as f64).pow(steps);
    let mut v = vectorize(initial.matrix());
    let mut t = 0.0;
    loop {
        let next = chunk.matvec(&v);
        check_raw(&next)?;
        let change = vec_norm(
            &next
                .iter()
                .zip(&v)
                .map(|(a, b)| a - b)
                .collect::<alloc::vec::Vec<_>>(),
        );
        v = next;
        t += CHECK_INTERVAL;
        if change < STATIONARITY_TOL {
            break;
        }
        if t >= MAX_EVOLUTION_TIME {
            return Err(Error::NotStationary {
                t_max: MAX_EVOLUTION_TIME,
                residual: change,
            });
        }
    }
    let rho = DensityMatrix::from_unnormalized(&unvectorize(&v))?;
    let residual = residual(l, &rho);
    Ok(SteadyResult {
        rho,
        kernel_dim: 0,
        method: SteadyMethod::Evolution,
        residual,
    })
}

/// Slowest nonzero relaxation rate, `−max{Re λ : |λ| > 10⁻⁹}` over the
/// spectrum of the generator.
pub fn liouvillian_gap(l: &Superoperator) -> Result<f64> {
    let spectrum = eig_general(l.matrix())?;
    let slowest = spectrum
        .iter()
        .filter(|z| z.norm() > 1e-9)
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(-slowest)
}

/// Steady state of the driven system, reached from `|gg⟩⟨gg|`.
pub fn solve(params: &crate::SystemParams, drive: &crate::Drive) -> Result<SteadyResult> {
    steady_state(&crate::operators::build_liouvillian(params, drive))
}
