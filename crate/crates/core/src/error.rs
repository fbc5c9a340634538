// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

/// Errors produced by the simulator core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions must be positive")]
    EmptyMatrix,

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("{algorithm} did not converge after {iterations} iterations")]
    NoConvergence {
        algorithm: &'static str,
        iterations: usize,
    },

    #[error("eigenvalue {index} failed certification: residual {residual:e} exceeds {bound:e}")]
    Uncertified {
        index: usize,
        residual: f64,
        bound: f64,
    },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("coupling k={k} inconsistent with gamma_wg={gamma_wg} (k^2 must equal gamma_wg)")]
    CouplingMismatch { k: f64, gamma_wg: f64 },

    #[error("not a density matrix: {reason} (deviation {deviation:e})")]
    InvalidDensityMatrix {
        reason: &'static str,
        deviation: f64,
    },

    #[error("time step rejected: {reason} (dt too large?)")]
    StepRejected { reason: &'static str },

    #[error("steady state not reached by t={t_max}/gamma (last change {residual:e})")]
    NotStationary { t_max: f64, residual: f64 },

    #[error("p=0 normalization undefined")]
    ZeroPower,

    #[error("empty channel: mean photon flux {flux:e} too small for g2")]
    EmptyChannel { flux: f64 },

    #[error("eigenvalue of rho*rho_tilde has imaginary part {imag:e}; state is not a valid density matrix")]
    ComplexSpectrum { imag: f64 },

    #[error("no pure steady state exists at these parameters")]
    NoPureState,
}

pub type Result<T> = core::result::Result<T, Error>;
