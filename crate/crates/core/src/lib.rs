// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Full quantum dynamics of two qubits coupled to a bidirectional waveguide
//! and to each other through a complex exchange `J·e^{iθ}`.
//!
//! The crate builds the driven Hamiltonian and the Lindblad generator for the
//! pair, finds the long-time steady state, and evaluates what an experiment
//! would see at the two waveguide ports: transmission and reflection (split
//! into coherent and incoherent parts), purity, Wootters concurrence and
//! zero-delay `g²(0)`. Closed-form references (pure dark steady states, the
//! reciprocal `J=0` transmission, the weak-drive coherent transmission) live
//! in [`analytics`] and are used to cross-check the numerics.
//!
//! All rates are in units of the waveguide decay rate `Γ`, times in `1/Γ`.
//! Two-qubit operators use the basis order `{|ee⟩, |eg⟩, |ge⟩, |gg⟩}` with
//! qubit `a` as the left tensor factor, and superoperators act on
//! column-stacked density matrices.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod analytics;
pub mod error;
pub mod model;
pub mod numerics;
pub mod observables;
pub mod operators;
pub mod steady;

pub use error::{Error, Result};
pub use model::{DensityMatrix, Drive, Port, SystemParams};
pub use numerics::{c64, CMatrix, C64};
pub use observables::{Channel, PortIntensities};
pub use operators::Superoperator;
pub use steady::{SteadyMethod, SteadyResult};
