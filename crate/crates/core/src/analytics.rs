// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form reference results: pure steady states at phase-matched
//! separations, their concurrence, the `J = 0` transmission, the
//! linear-response coherent transmission, and the time-reversal and
//! qubit-swap identities.

use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

// Unused when std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{basis, DensityMatrix, Drive, Port, QOperator, SystemParams};
use crate::numerics::{c64, C64};
use crate::observables::{output_amplitude, port_intensities, Channel};
use crate::operators::{
    collective_rotation, exchange_hamiltonian, hamiltonian_with_inputs, permutation_operator,
};
use crate::steady::solve;

/// Absolute tolerance for detecting `φ = nπ` and the other exact conditions.
pub const PHASE_MATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PureFamily {
    /// `Δₐ = Δ_b = (−1)ⁿJ cos θ`.
    SymmetricLock,
    /// `Δₐ = −Δ_b`, `θ ∈ {π/2, 3π/2}`.
    AntisymmetricPinned,
    /// Undriven system relaxing to `|gg⟩`.
    TrivialGround,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureStateClassification {
    pub exists: bool,
    pub family: PureFamily,
    /// `φ = nπ`, when phase matched.
    pub n: Option<i64>,
    /// Normalized state vector in the `{ee, eg, ge, gg}` basis.
    pub state: Option<[C64; 4]>,
    /// Eigenvalue of the driven Hamiltonian on `state`.
    pub energy: Option<f64>,
}

impl PureStateClassification {
    fn none(n: Option<i64>) -> Self {
        Self {
            exists: false,
            family: PureFamily::None,
            n,
            state: None,
            energy: None,
        }
    }

    pub fn density_matrix(&self) -> Option<DensityMatrix> {
        self.state.and_then(|s| DensityMatrix::pure(&s).ok())
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PHASE_MATCH_TOL
}

/// Integer `n` with `|φ − nπ| ≤ 10⁻¹²`.
pub fn phase_match_order(phi: f64) -> Option<i64> {
    let n = (phi / PI).round();
    close(phi, n * PI).then_some(n as i64)
}

/// Finds the pure steady state, if any.
///
/// At `φ = nπ` both channel jump operators collapse to one collective
/// operator whose only dark states are `|gg⟩` and the single-excitation
/// state `|Dₙ⟩ = (|eg⟩ − (−1)ⁿ|ge⟩)/√2`. A driven pure steady state is a
/// superposition of these that is also a Hamiltonian eigenvector, which pins
/// the detunings to one of two families. Extra losses `γᵢ > 0` make `|Dₙ⟩`
/// decay and rule out any driven pure state.
pub fn classify_pure_state(params: &SystemParams, drive: &Drive) -> PureStateClassification {
    let n = phase_match_order(params.phi());
    if drive.alpha() == 0.0 {
        let mut state = [c64(0.0, 0.0); 4];
        state[basis::GG] = c64(1.0, 0.0);
        return PureStateClassification {
            exists: true,
            family: PureFamily::TrivialGround,
            n,
            state: Some(state),
            energy: Some(-0.5 * (params.delta_a() + params.delta_b())),
        };
    }
    let Some(order) = n else {
        return PureStateClassification::none(None);
    };
    if params.gamma_a() > 0.0 || params.gamma_b() > 0.0 {
        return PureStateClassification::none(n);
    }

    let s = if order.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (j, theta) = (params.j_mag(), params.theta());
    let (da, db) = (params.delta_a(), params.delta_b());
    let j_sin = j * theta.sin();

    let (family, delta_anti, energy) =
        if close(da, db) && close(da, s * j * theta.cos()) && j_sin.abs() > PHASE_MATCH_TOL {
            (PureFamily::SymmetricLock, 0.0, -da)
        } else if close(da, -db)
            && j > 0.0
            && (close(theta, FRAC_PI_2) || close(theta, 3.0 * FRAC_PI_2))
        {
            (PureFamily::AntisymmetricPinned, da, 0.0)
        } else {
            return PureStateClassification::none(n);
        };

    let eta = match drive.port() {
        Port::Forward => 1.0,
        Port::Backward => s,
    };
    let d = eta * 2f64.sqrt() * params.k() * drive.alpha();
    let mut state = [c64(0.0, 0.0); 4];
    state[basis::EG] = c64(d * FRAC_1_SQRT_2, 0.0);
    state[basis::GE] = c64(-s * d * FRAC_1_SQRT_2, 0.0);
    state[basis::GG] = c64(s * j_sin, delta_anti);
    let norm = crate::numerics::vec_norm(&state);
    for z in &mut state {
        *z /= norm;
    }
    PureStateClassification {
        exists: true,
        family,
        n,
        state: Some(state),
        energy: Some(energy),
    }
}

/// `C = 2k²α² / (2k²α² + J² ∓ Δ²)`, minus for the symmetric lock and plus
/// for the antisymmetric family. The undriven ground state gives 0.
pub fn closed_form_concurrence(params: &SystemParams, drive: &Drive) -> Result<f64> {
    let class = classify_pure_state(params, drive);
    let drive_term = 2.0 * params.k().powi(2) * drive.power();
    let j2 = params.j_mag().powi(2);
    let d2 = params.delta_a().powi(2);
    match class.family {
        PureFamily::SymmetricLock => Ok(drive_term / (drive_term + j2 - d2)),
        PureFamily::AntisymmetricPinned => Ok(drive_term / (drive_term + j2 + d2)),
        PureFamily::TrivialGround => Ok(0.0),
        PureFamily::None => Err(Error::NoPureState),
    }
}

/// Transmission at `J = 0`, `φ = π`, `Δₐ = Δ_b = Δ`:
///
/// `T = (Δ⁴ + k⁴(3α⁴ + Δ²) + 4α²Δ²k²) / (Δ⁴ + 4k⁸ + 3α⁴k⁴ + 5Δ²k⁴ + 4α²k²(Δ² + k⁴))`
pub fn analytic_t_j0(delta: f64, params: &SystemParams, drive: &Drive) -> f64 {
    let (d2, k2, a2) = (delta * delta, params.k().powi(2), drive.power());
    let (d4, k4, a4) = (d2 * d2, k2 * k2, a2 * a2);
    let num = d4 + k4 * (3.0 * a4 + d2) + 4.0 * a2 * d2 * k2;
    let den = d4 + 4.0 * k4 * k4 + 3.0 * a4 * k4 + 5.0 * d2 * k4 + 4.0 * a2 * k2 * (d2 + k4);
    num / den
}

/// Coherent transmission in linear response (vanishing drive), identical for
/// both ports.
pub fn weak_drive_tc(params: &SystemParams) -> f64 {
    let i = c64(0.0, 1.0);
    let g = params.gamma_wg();
    let j = params.j_mag();
    let (theta, phi) = (params.theta(), params.phi());
    let (da, db) = (params.delta_a(), params.delta_b());
    let num = c64(-j * j + da * db, 0.0) - C64::from_polar(2.0 * j * g * phi.sin(), -theta);
    let den = c64(-j * j, 0.0)
        + i * C64::from_polar(2.0 * g * j * theta.cos(), phi)
        + C64::from_polar(g * g, 2.0 * phi)
        - (c64(g, da) * c64(g, db));
    num.norm_sqr() / den.norm_sqr()
}

/// Residuals of the time-reversal and qubit-swap identities.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    /// `max|H(θ; ε₁, ε₂)* − U·H(−θ; ε₂*, ε₁*)·U†|` with the collective phase
    /// rotation `U = exp(−i(π+φ)Sᶻ_tot)`.
    pub time_reversal_residual: f64,
    /// `max|H_exch* − H_exch|`; nonzero exactly when `J sin θ ≠ 0`.
    pub exchange_trs_breaking: f64,
    /// Trace distance between `ρᴮ(−θ)` and `P·ρᶠ(θ)·P`; only defined for
    /// `Δₐ = Δ_b`, `γₐ = γ_b`.
    pub swap_trace_distance: Option<f64>,
    /// Largest difference between forward intensities at `θ` and backward
    /// intensities at `−θ`.
    pub intensity_residual: Option<f64>,
    /// Largest difference between the corresponding complex output
    /// amplitudes.
    pub amplitude_residual: Option<f64>,
}

impl SymmetryReport {
    pub fn max_residual(&self) -> f64 {
        [
            Some(self.time_reversal_residual),
            self.swap_trace_distance,
            self.intensity_residual,
            self.amplitude_residual,
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }
}

fn max_abs_diff(a: &QOperator, b: &QOperator) -> f64 {
    (a - b).max_abs()
}

pub fn verify_symmetries(params: &SystemParams, drive: &Drive) -> Result<SymmetryReport> {
    let (e1, e2) = drive.inputs();
    let mirrored = params.with_theta(-params.theta())?;

    let h = hamiltonian_with_inputs(params, e1, e2);
    let h_rev = hamiltonian_with_inputs(&mirrored, e2.conj(), e1.conj());
    let u = collective_rotation(PI + params.phi());
    let time_reversal_residual = max_abs_diff(&h.conj(), &(&(&u * &h_rev) * &u.adjoint()));
    let h_ex = exchange_hamiltonian(params);
    let exchange_trs_breaking = max_abs_diff(&h_ex.conj(), &h_ex);

    let swap_applicable = params.delta_a() == params.delta_b()
        && params.gamma_a() == params.gamma_b()
        && drive.power() > 0.0;
    let (swap_trace_distance, intensity_residual, amplitude_residual) = if swap_applicable {
        let fwd = Drive::new(Port::Forward, drive.alpha())?;
        let bwd = fwd.reversed();
        let rho_f = solve(params, &fwd)?.rho;
        let rho_b = solve(&mirrored, &bwd)?.rho;
        let swapped = rho_f.conjugated_by(&permutation_operator())?;
        let dist = rho_b.trace_distance(&swapped)?;

        let i_f = port_intensities(&rho_f, params, &fwd)?;
        let i_b = port_intensities(&rho_b, &mirrored, &bwd)?;
        let intens = [
            i_f.t - i_b.t,
            i_f.t_c - i_b.t_c,
            i_f.t_inc - i_b.t_inc,
            i_f.r - i_b.r,
            i_f.r_c - i_b.r_c,
            i_f.r_inc - i_b.r_inc,
        ]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));

        let amp = [Channel::Transmit, Channel::Reflect]
            .iter()
            .map(|&ch| {
                (output_amplitude(&rho_f, params, &fwd, ch)
                    - output_amplitude(&rho_b, &mirrored, &bwd, ch))
                .norm()
            })
            .fold(0.0f64, f64::max);
        (Some(dist), Some(intens), Some(amp))
    } else {
        (None, None, None)
    };

    Ok(SymmetryReport {
        time_reversal_residual,
        exchange_trs_breaking,
        swap_trace_distance,
        intensity_residual,
        amplitude_residual,
    })
}
