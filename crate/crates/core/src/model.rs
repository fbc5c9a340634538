// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameters, drive, basis conventions and spin operators.

use core::f64::consts::TAU;

// Unused when std is in the build graph (its inherent float methods win).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::{c64, eigvalsh, kron, vec_norm, CMatrix, C64};

/// Two-qubit basis order shared by every operator in the crate.
pub mod basis {
    pub const DIM: usize = 4;
    pub const EE: usize = 0;
    pub const EG: usize = 1;
    pub const GE: usize = 2;
    pub const GG: usize = 3;
    pub const LABELS: [&str; DIM] = ["ee", "eg", "ge", "gg"];
}

/// A 4×4 operator on the two-qubit space.
pub type QOperator = CMatrix;

/// Basis vector `|index⟩`.
pub fn ket(index: usize) -> [C64; basis::DIM] {
    let mut v = [C64::new(0.0, 0.0); basis::DIM];
    v[index] = c64(1.0, 0.0);
    v
}

/// Spin-½ operators of both qubits. Qubit `a` is the left tensor factor.
#[derive(Debug, Clone)]
pub struct SpinOps {
    pub sz_a: QOperator,
    pub sp_a: QOperator,
    pub sm_a: QOperator,
    pub sz_b: QOperator,
    pub sp_b: QOperator,
    pub sm_b: QOperator,
}

/// Builds `Sᶻ`, `S⁺`, `S⁻` for both qubits from the single-qubit matrices in
/// the `(e, g)` basis.
pub fn spin_ops() -> SpinOps {
    let id = CMatrix::identity(2);
    let sm = CMatrix::from_real(2, &[0.0, 0.0, 1.0, 0.0]);
    let sp = sm.transpose();
    let sz = CMatrix::from_real(2, &[0.5, 0.0, 0.0, -0.5]);
    SpinOps {
        sz_a: kron(&sz, &id),
        sp_a: kron(&sp, &id),
        sm_a: kron(&sm, &id),
        sz_b: kron(&id, &sz),
        sp_b: kron(&id, &sp),
        sm_b: kron(&id, &sm),
    }
}

fn check_finite(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: "must be finite",
        })
    }
}

fn normalize_angle(x: f64) -> f64 {
    let mut r = x % TAU;
    if r < 0.0 {
        r += TAU;
    }
    if r >= TAU {
        r -= TAU;
    }
    r
}

/// Physical parameters of the two-qubit waveguide system, in units of `Γ`.
///
/// Constructed through [`SystemParams::builder`], which validates every field
/// and normalizes `θ` into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    gamma_wg: f64,
    gamma_a: f64,
    gamma_b: f64,
    delta_a: f64,
    delta_b: f64,
    j_mag: f64,
    theta: f64,
    phi: f64,
    k: f64,
}

impl SystemParams {
    pub fn builder() -> SystemParamsBuilder {
        SystemParamsBuilder::default()
    }

    /// Waveguide decay rate `Γ`.
    pub fn gamma_wg(&self) -> f64 {
        self.gamma_wg
    }

    /// Non-waveguide loss of qubit `a`.
    pub fn gamma_a(&self) -> f64 {
        self.gamma_a
    }

    /// Non-waveguide loss of qubit `b`.
    pub fn gamma_b(&self) -> f64 {
        self.gamma_b
    }

    /// `Δₐ = ωₐ − ω_d`.
    pub fn delta_a(&self) -> f64 {
        self.delta_a
    }

    /// `Δ_b = ω_b − ω_d`.
    pub fn delta_b(&self) -> f64 {
        self.delta_b
    }

    /// Exchange magnitude `J ≥ 0`.
    pub fn j_mag(&self) -> f64 {
        self.j_mag
    }

    /// Exchange (DMI) phase `θ ∈ [0, 2π)`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Propagation phase between the qubits.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Real qubit–waveguide coupling, `k² = Γ`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Complex exchange `J·e^{iθ}`.
    pub fn exchange(&self) -> C64 {
        C64::from_polar(self.j_mag, self.theta)
    }

    fn to_builder(self) -> SystemParamsBuilder {
        SystemParamsBuilder {
            gamma_wg: self.gamma_wg,
            gamma_a: self.gamma_a,
            gamma_b: self.gamma_b,
            delta_a: self.delta_a,
            delta_b: self.delta_b,
            j_mag: self.j_mag,
            theta: self.theta,
            phi: self.phi,
            k: Some(self.k),
        }
    }

    pub fn with_theta(self, theta: f64) -> Result<Self> {
        self.to_builder().exchange(self.j_mag, theta).build()
    }

    pub fn with_exchange(self, j_mag: f64, theta: f64) -> Result<Self> {
        self.to_builder().exchange(j_mag, theta).build()
    }

    pub fn with_detunings(self, delta_a: f64, delta_b: f64) -> Result<Self> {
        self.to_builder().detunings(delta_a, delta_b).build()
    }

    pub fn with_phi(self, phi: f64) -> Result<Self> {
        self.to_builder().phi(phi).build()
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams::builder()
            .build()
            .expect("default parameters are valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParamsBuilder {
    gamma_wg: f64,
    gamma_a: f64,
    gamma_b: f64,
    delta_a: f64,
    delta_b: f64,
    j_mag: f64,
    theta: f64,
    phi: f64,
    k: Option<f64>,
}

impl Default for SystemParamsBuilder {
    fn default() -> Self {
        Self {
            gamma_wg: 1.0,
            gamma_a: 0.0,
            gamma_b: 0.0,
            delta_a: 0.0,
            delta_b: 0.0,
            j_mag: 0.0,
            theta: 0.0,
            phi: 0.0,
            k: None,
        }
    }
}

impl SystemParamsBuilder {
    pub fn gamma_wg(mut self, gamma_wg: f64) -> Self {
        self.gamma_wg = gamma_wg;
        self
    }

    pub fn losses(mut self, gamma_a: f64, gamma_b: f64) -> Self {
        self.gamma_a = gamma_a;
        self.gamma_b = gamma_b;
        self
    }

    pub fn detunings(mut self, delta_a: f64, delta_b: f64) -> Self {
        self.delta_a = delta_a;
        self.delta_b = delta_b;
        self
    }

    pub fn exchange(mut self, j_mag: f64, theta: f64) -> Self {
        self.j_mag = j_mag;
        self.theta = theta;
        self
    }

    pub fn phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    /// Overrides the coupling; by default `k = √Γ`.
    pub fn k(mut self, k: f64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn build(self) -> Result<SystemParams> {
        check_finite("gamma_wg", self.gamma_wg)?;
        check_finite("gamma_a", self.gamma_a)?;
        check_finite("gamma_b", self.gamma_b)?;
        check_finite("delta_a", self.delta_a)?;
        check_finite("delta_b", self.delta_b)?;
        check_finite("j", self.j_mag)?;
        check_finite("theta", self.theta)?;
        check_finite("phi", self.phi)?;
        if self.gamma_wg <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma_wg",
                reason: "must be positive",
            });
        }
        if self.gamma_a < 0.0 || self.gamma_b < 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma_a/gamma_b",
                reason: "must be nonnegative",
            });
        }
        if self.j_mag < 0.0 {
            return Err(Error::InvalidParameter {
                name: "j",
                reason: "must be nonnegative",
            });
        }
        let k = self.k.unwrap_or_else(|| self.gamma_wg.sqrt());
        check_finite("k", k)?;
        if k <= 0.0 || (k * k - self.gamma_wg).abs() > 1e-12 * self.gamma_wg {
            return Err(Error::CouplingMismatch {
                k,
                gamma_wg: self.gamma_wg,
            });
        }
        Ok(SystemParams {
            gamma_wg: self.gamma_wg,
            gamma_a: self.gamma_a,
            gamma_b: self.gamma_b,
            delta_a: self.delta_a,
            delta_b: self.delta_b,
            j_mag: self.j_mag,
            theta: normalize_angle(self.theta),
            phi: self.phi,
            k,
        })
    }
}

/// Input port of the coherent drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    /// Port 1, right-going input.
    Forward,
    /// Port 2, left-going input.
    Backward,
}

impl Port {
    pub fn opposite(self) -> Port {
        match self {
            Port::Forward => Port::Backward,
            Port::Backward => Port::Forward,
        }
    }

    /// Single-letter tag used in table headers.
    pub fn tag(self) -> &'static str {
        match self {
            Port::Forward => "F",
            Port::Backward => "B",
        }
    }
}

/// Single-sided coherent drive with real amplitude `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drive {
    port: Port,
    alpha: f64,
}

impl Drive {
    pub fn new(port: Port, alpha: f64) -> Result<Self> {
        check_finite("alpha", alpha)?;
        if alpha < 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: "must be nonnegative",
            });
        }
        Ok(Self { port, alpha })
    }

    /// Drive with power `p = α²` (units of `Γ`).
    pub fn from_power(port: Port, power: f64) -> Result<Self> {
        check_finite("power", power)?;
        if power < 0.0 {
            return Err(Error::InvalidParameter {
                name: "power",
                reason: "must be nonnegative",
            });
        }
        Self::new(port, power.sqrt())
    }

    pub fn port(&self) -> Port {
        self.port
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn power(&self) -> f64 {
        self.alpha * self.alpha
    }

    /// Same amplitude, other port.
    pub fn reversed(&self) -> Drive {
        Drive {
            port: self.port.opposite(),
            alpha: self.alpha,
        }
    }

    /// Input amplitudes `(ε₁→, ε₂←)`; the counterpropagating one is zero.
    pub fn inputs(&self) -> (C64, C64) {
        let a = c64(self.alpha, 0.0);
        let zero = c64(0.0, 0.0);
        match self.port {
            Port::Forward => (a, zero),
            Port::Backward => (zero, a),
        }
    }
}

/// Tolerance on `‖ρ − ρ†‖` entries.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Tolerance on `|Tr ρ − 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest admissible eigenvalue.
pub const POSITIVITY_TOL: f64 = 1e-8;

/// Validated two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.rows() != basis::DIM || m.cols() != basis::DIM {
            return Err(Error::DimensionMismatch {
                expected: alloc::format!("{0}x{0}", basis::DIM),
                got: alloc::format!("{}x{}", m.rows(), m.cols()),
            });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite("density matrix"));
        }
        let herm = m.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix {
                reason: "not Hermitian",
                deviation: herm,
            });
        }
        let tr = (m.trace() - c64(1.0, 0.0)).norm();
        if tr > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix {
                reason: "trace differs from 1",
                deviation: tr,
            });
        }
        let min = eigvalsh(&m)?[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidDensityMatrix {
                reason: "negative eigenvalue",
                deviation: -min,
            });
        }
        Ok(Self(m))
    }

    /// Hermitizes `(m + m†)/2`, divides by the trace, then validates.
    pub fn from_unnormalized(m: &CMatrix) -> Result<Self> {
        let h = m.hermitian_part();
        let tr = h.trace().re;
        if !(tr.abs() > f64::MIN_POSITIVE) || !tr.is_finite() {
            return Err(Error::InvalidDensityMatrix {
                reason: "trace vanishes",
                deviation: tr.abs(),
            });
        }
        Self::new(h.scale(c64(1.0 / tr, 0.0)))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) state vector.
    pub fn pure(state: &[C64]) -> Result<Self> {
        if state.len() != basis::DIM {
            return Err(Error::DimensionMismatch {
                expected: alloc::format!("{}-component state", basis::DIM),
                got: alloc::format!("{} components", state.len()),
            });
        }
        let n = vec_norm(state);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter {
                name: "state",
                reason: "must have finite nonzero norm",
            });
        }
        let psi: alloc::vec::Vec<C64> = state.iter().map(|z| z / n).collect();
        Self::new(CMatrix::outer(&psi, &psi))
    }

    /// `|gg⟩⟨gg|`.
    pub fn ground() -> Self {
        Self(CMatrix::outer(&ket(basis::GG), &ket(basis::GG)))
    }

    /// `I/4`.
    pub fn maximally_mixed() -> Self {
        Self(CMatrix::identity(basis::DIM).scale(c64(0.25, 0.0)))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// `⟨ψ|ρ|ψ⟩` for a normalized `ψ`.
    pub fn expectation_in(&self, psi: &[C64]) -> f64 {
        let rho_psi = self.0.matvec(psi);
        crate::numerics::inner(psi, &rho_psi).re
    }

    /// `Tr[ρ·A]`.
    pub fn expect(&self, op: &CMatrix) -> C64 {
        (&self.0 * op).trace()
    }

    pub fn eigenvalues(&self) -> Result<alloc::vec::Vec<f64>> {
        eigvalsh(&self.0)
    }

    /// `½‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        let diff = &self.0 - &other.0;
        Ok(0.5 * eigvalsh(&diff)?.iter().map(|x| x.abs()).sum::<f64>())
    }

    /// Conjugation `U ρ U†` by a unitary, e.g. the qubit swap.
    pub fn conjugated_by(&self, u: &CMatrix) -> Result<Self> {
        Self::new(&(u * &self.0) * &u.adjoint())
    }
}
