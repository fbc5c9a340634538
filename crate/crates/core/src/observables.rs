// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Output fields, transmission and reflection, purity, concurrence and
//! zero-delay photon correlations.

// Unused when std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{spin_ops, DensityMatrix, Drive, Port, QOperator, SystemParams};
use crate::numerics::{c64, eig_general, CMatrix, C64};

/// Imaginary parts of `ρρ̃` eigenvalues below this are treated as round-off.
pub const IMAG_DISCARD_TOL: f64 = 1e-8;
/// Imaginary parts above this make [`concurrence`] fail.
pub const IMAG_ERROR_TOL: f64 = 1e-6;
/// Smallest photon flux for which [`g2_zero`] is defined.
pub const MIN_FLUX: f64 = 1e-12;

/// Detection channel relative to the driven port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Transmit,
    Reflect,
}

/// Output field operator at the detector for a single-sided drive.
///
/// The right-going output is `e^{iφ}ε₁→ − k(e^{iφ}S⁻ₐ + S⁻_b)` and the
/// left-going one `e^{iφ}ε₂← − k(S⁻ₐ + e^{iφ}S⁻_b)`; transmission picks the
/// output travelling away from the driven port.
pub fn output_field_operator(params: &SystemParams, drive: &Drive, channel: Channel) -> QOperator {
    let s = spin_ops();
    let k = c64(params.k(), 0.0);
    let e = C64::from_polar(1.0, params.phi());
    let (eps_fwd, eps_bwd) = drive.inputs();
    let id = CMatrix::identity(4);
    let right_going = || &id.scale(e * eps_fwd) - &(&s.sm_a.scale(e) + &s.sm_b).scale(k);
    let left_going = || &id.scale(e * eps_bwd) - &(&s.sm_a + &s.sm_b.scale(e)).scale(k);
    match (drive.port(), channel) {
        (Port::Forward, Channel::Transmit) | (Port::Backward, Channel::Reflect) => right_going(),
        (Port::Backward, Channel::Transmit) | (Port::Forward, Channel::Reflect) => left_going(),
    }
}

/// Complex output amplitude `⟨ε⟩ = Tr[ρE]`.
pub fn output_amplitude(
    rho: &DensityMatrix,
    params: &SystemParams,
    drive: &Drive,
    channel: Channel,
) -> C64 {
    rho.expect(&output_field_operator(params, drive, channel))
}

/// Transmitted and reflected intensities normalized by the input power,
/// each split into coherent and incoherent parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortIntensities {
    pub t: f64,
    pub t_c: f64,
    pub t_inc: f64,
    pub r: f64,
    pub r_c: f64,
    pub r_inc: f64,
}

fn split(rho: &DensityMatrix, e: &CMatrix, p: f64) -> (f64, f64, f64) {
    let total = rho.expect(&(&e.adjoint() * e)).re / p;
    let coherent = rho.expect(e).norm_sqr() / p;
    (total, coherent, total - coherent)
}

pub fn port_intensities(
    rho: &DensityMatrix,
    params: &SystemParams,
    drive: &Drive,
) -> Result<PortIntensities> {
    let p = drive.power();
    if !(p > 0.0) {
        return Err(Error::ZeroPower);
    }
    let (t, t_c, t_inc) = split(
        rho,
        &output_field_operator(params, drive, Channel::Transmit),
        p,
    );
    let (r, r_c, r_inc) = split(
        rho,
        &output_field_operator(params, drive, Channel::Reflect),
        p,
    );
    Ok(PortIntensities {
        t,
        t_c,
        t_inc,
        r,
        r_c,
        r_inc,
    })
}

/// `Tr[ρ²]`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    (m * m).trace().re
}

/// `σ_y ⊗ σ_y`, which is real.
fn sigma_yy() -> CMatrix {
    CMatrix::from_real(
        4,
        &[
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0,
        ],
    )
}

/// Spin-flipped state `ρ̃ = (σ_y⊗σ_y)ρ*(σ_y⊗σ_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> CMatrix {
    let yy = sigma_yy();
    &(&yy * &rho.matrix().conj()) * &yy
}

/// Square roots of the eigenvalues of `ρρ̃`, nonincreasing.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let product = rho.matrix() * &spin_flip(rho);
    let spectrum = eig_general(&product)?;
    let mut out = [0.0; 4];
    for (slot, z) in out.iter_mut().zip(&spectrum) {
        if z.im.abs() > IMAG_ERROR_TOL {
            return Err(Error::ComplexSpectrum { imag: z.im });
        }
        // Imaginary leakage up to IMAG_ERROR_TOL is dropped with the real part kept.
        *slot = z.re.max(0.0).sqrt();
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Zero-delay second-order correlation `Tr[ρE†E†EE] / (Tr[ρE†E])²`.
pub fn g2_zero(
    rho: &DensityMatrix,
    params: &SystemParams,
    drive: &Drive,
    channel: Channel,
) -> Result<f64> {
    let e = output_field_operator(params, drive, channel);
    let e_dag = e.adjoint();
    let flux = rho.expect(&(&e_dag * &e)).re;
    if !(flux > MIN_FLUX) {
        return Err(Error::EmptyChannel { flux });
    }
    let pairs = rho.expect(&(&(&e_dag * &e_dag) * &(&e * &e))).re;
    Ok(pairs / (flux * flux))
}
