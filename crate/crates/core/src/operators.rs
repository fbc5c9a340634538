// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Hamiltonian, Lindblad generator (literal and jump forms), jump operators
//! and the qubit-swap map.
//!
//! Superoperators act on column-stacked density matrices:
//! `vec(ρ)[i + 4j] = ρᵢⱼ`, so `vec(AρB) = (Bᵀ ⊗ A)·vec(ρ)`.

use alloc::vec::Vec;

// Unused when std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{basis, spin_ops, Drive, QOperator, SystemParams};
use crate::numerics::{c64, kron, CMatrix, C64};

/// Dimension of the vectorized density-matrix space.
pub const SUPER_DIM: usize = basis::DIM * basis::DIM;

const I: C64 = c64(0.0, 1.0);

/// Linear map on vectorized density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator(CMatrix);

impl Superoperator {
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        if m.rows() != SUPER_DIM || m.cols() != SUPER_DIM {
            return Err(Error::DimensionMismatch {
                expected: alloc::format!("{0}x{0}", SUPER_DIM),
                got: alloc::format!("{}x{}", m.rows(), m.cols()),
            });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite("superoperator"));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    /// `L(ρ)` for a 4×4 operator.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        unvectorize(&self.0.matvec(&vectorize(rho)))
    }
}

/// Column-stacking vectorization.
pub fn vectorize(rho: &CMatrix) -> Vec<C64> {
    let n = rho.rows();
    let mut v = Vec::with_capacity(n * rho.cols());
    for j in 0..rho.cols() {
        for i in 0..n {
            v.push(rho[(i, j)]);
        }
    }
    v
}

/// Inverse of [`vectorize`] for a square matrix.
pub fn unvectorize(v: &[C64]) -> CMatrix {
    let n = (v.len() as f64).sqrt().round() as usize;
    assert_eq!(n * n, v.len(), "vector length is not a perfect square");
    CMatrix::from_fn(n, n, |i, j| v[i + n * j])
}

/// `ρ ↦ Aρ`.
pub fn left(a: &CMatrix) -> CMatrix {
    kron(&CMatrix::identity(a.rows()), a)
}

/// `ρ ↦ ρB`.
pub fn right(b: &CMatrix) -> CMatrix {
    kron(&b.transpose(), &CMatrix::identity(b.rows()))
}

/// `ρ ↦ AρB`.
pub fn sandwich(a: &CMatrix, b: &CMatrix) -> CMatrix {
    kron(&b.transpose(), a)
}

/// `ρ ↦ −i[H, ρ]`.
pub fn hamiltonian_part(h: &CMatrix) -> CMatrix {
    (&left(h) - &right(h)).scale(-I)
}

/// Standard Lindblad dissipator `rate·(ξρξ† − ½{ξ†ξ, ρ})`.
pub fn dissipator(xi: &CMatrix, rate: f64) -> CMatrix {
    let xi_dag = xi.adjoint();
    let n = &xi_dag * xi;
    let d = &sandwich(xi, &xi_dag) - &(&left(&n) + &right(&n)).scale(c64(0.5, 0.0));
    d.scale(c64(rate, 0.0))
}

/// `i·k·x·S⁺ + h.c.` for real `k`.
fn drive_term(k: f64, x: C64, sp: &CMatrix) -> CMatrix {
    let t = sp.scale(I * k * x);
    &t + &t.adjoint()
}

/// Exchange part `J e^{iθ} S⁺ₐS⁻_b + h.c.` of the Hamiltonian.
pub fn exchange_hamiltonian(params: &SystemParams) -> QOperator {
    let s = spin_ops();
    let t = (&s.sp_a * &s.sm_b).scale(params.exchange());
    &t + &t.adjoint()
}

/// Hamiltonian for arbitrary complex input amplitudes `(ε₁→, ε₂←)`.
pub fn hamiltonian_with_inputs(params: &SystemParams, eps_fwd: C64, eps_bwd: C64) -> QOperator {
    let s = spin_ops();
    let k = params.k();
    let e_phi = C64::from_polar(1.0, params.phi());
    let mut h =
        &s.sz_a.scale(c64(params.delta_a(), 0.0)) + &s.sz_b.scale(c64(params.delta_b(), 0.0));
    h = &h + &exchange_hamiltonian(params);
    h = &h + &drive_term(k, eps_fwd + e_phi * eps_bwd, &s.sp_a);
    h = &h + &drive_term(k, e_phi * eps_fwd + eps_bwd, &s.sp_b);
    h
}

/// Driven two-qubit Hamiltonian in the frame rotating at the drive frequency.
pub fn build_hamiltonian(params: &SystemParams, drive: &Drive) -> QOperator {
    let (eps_fwd, eps_bwd) = drive.inputs();
    hamiltonian_with_inputs(params, eps_fwd, eps_bwd)
}

/// Collective jump operators into the right- and left-going channels.
#[derive(Debug, Clone)]
pub struct JumpOperators {
    /// `c→ = S⁻ₐ + e^{−iφ}S⁻_b`
    pub right: QOperator,
    /// `c← = S⁻ₐ + e^{iφ}S⁻_b`
    pub left: QOperator,
}

pub fn jump_operators(phi: f64) -> JumpOperators {
    let s = spin_ops();
    JumpOperators {
        right: &s.sm_a + &s.sm_b.scale(C64::from_polar(1.0, -phi)),
        left: &s.sm_a + &s.sm_b.scale(C64::from_polar(1.0, phi)),
    }
}

/// Generator of `ρ̇` assembled term by term from the master equation with
/// individual `(S⁺S⁻ρ − 2S⁻ρS⁺ + ρS⁺S⁻)` dissipators and the
/// waveguide-mediated cross terms.
pub fn build_liouvillian(params: &SystemParams, drive: &Drive) -> Superoperator {
    let s = spin_ops();
    let gamma = params.gamma_wg();
    let mut l = hamiltonian_part(&build_hamiltonian(params, drive));

    for (sm, sp, loss) in [
        (&s.sm_a, &s.sp_a, params.gamma_a()),
        (&s.sm_b, &s.sp_b, params.gamma_b()),
    ] {
        let n = sp * sm;
        let d = &(&left(&n) - &sandwich(sm, sp).scale(c64(2.0, 0.0))) + &right(&n);
        l = &l - &d.scale(c64(gamma + loss, 0.0));
    }

    let e = C64::from_polar(1.0, params.phi());
    let ec = e.conj();
    let hop_ab = &s.sp_a * &s.sm_b;
    let hop_ba = &s.sp_b * &s.sm_a;
    let cross = &(&left(&hop_ab).scale(e) - &sandwich(&s.sm_b, &s.sp_a).scale(e + ec))
        + &right(&hop_ab).scale(ec);
    let cross_hc = &(&right(&hop_ba).scale(ec) - &sandwich(&s.sm_a, &s.sp_b).scale(ec + e))
        + &left(&hop_ba).scale(e);
    l = &l - &(&cross + &cross_hc).scale(c64(gamma, 0.0));
    Superoperator(l)
}

/// The same generator written as a coherent part plus one Lindblad
/// dissipator per waveguide channel (rate `Γ` each) and per extra loss
/// channel (rate `2γᵢ`).
///
/// The collective decay `Γe^{±iφ}` splits into a dissipative `Γcos φ` part,
/// carried by the two channels, and a coherent `Γ sin φ` exchange.
pub fn build_liouvillian_jump_form(params: &SystemParams, drive: &Drive) -> Superoperator {
    let s = spin_ops();
    let gamma = params.gamma_wg();
    let flipflop = &(&s.sp_a * &s.sm_b) + &(&s.sp_b * &s.sm_a);
    let h =
        &build_hamiltonian(params, drive) + &flipflop.scale(c64(gamma * params.phi().sin(), 0.0));
    let jumps = jump_operators(params.phi());
    let mut l = hamiltonian_part(&h);
    l = &l + &dissipator(&jumps.right, gamma);
    l = &l + &dissipator(&jumps.left, gamma);
    if params.gamma_a() > 0.0 {
        l = &l + &dissipator(&s.sm_a, 2.0 * params.gamma_a());
    }
    if params.gamma_b() > 0.0 {
        l = &l + &dissipator(&s.sm_b, 2.0 * params.gamma_b());
    }
    Superoperator(l)
}

/// Linear-response inter-qubit couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalCouplings {
    /// `A_{a→b} = iJe^{−iθ} + Γe^{iφ}`
    pub a_to_b: C64,
    /// `A_{b→a} = iJe^{iθ} + Γe^{iφ}`
    pub b_to_a: C64,
    /// `A_{b→a} − A_{a→b}`, equal to `−2J sin θ`.
    pub imbalance: C64,
}

pub fn directional_couplings(params: &SystemParams) -> DirectionalCouplings {
    let j = params.j_mag();
    let wg = C64::from_polar(params.gamma_wg(), params.phi());
    let b_to_a = I * C64::from_polar(j, params.theta()) + wg;
    let a_to_b = I * C64::from_polar(j, -params.theta()) + wg;
    DirectionalCouplings {
        a_to_b,
        b_to_a,
        imbalance: b_to_a - a_to_b,
    }
}

/// Qubit swap: `|eg⟩ ↔ |ge⟩`, fixing `|ee⟩` and `|gg⟩`.
pub fn permutation_operator() -> QOperator {
    let mut p = CMatrix::zeros(basis::DIM, basis::DIM);
    p[(basis::EE, basis::EE)] = c64(1.0, 0.0);
    p[(basis::GG, basis::GG)] = c64(1.0, 0.0);
    p[(basis::EG, basis::GE)] = c64(1.0, 0.0);
    p[(basis::GE, basis::EG)] = c64(1.0, 0.0);
    p
}

/// Collective phase rotation `exp(−iχ(Sᶻₐ + Sᶻ_b))`, which maps `S⁺ ↦ e^{−iχ}S⁺`.
pub fn collective_rotation(chi: f64) -> QOperator {
    let s = spin_ops();
    let sz = &s.sz_a + &s.sz_b;
    CMatrix::diag(
        &(0..basis::DIM)
            .map(|i| C64::from_polar(1.0, -chi * sz[(i, i)].re))
            .collect::<Vec<_>>(),
    )
}
