// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use common::*;
use rand::Rng;
use wqed_core::analytics::*;
use wqed_core::model::basis;
use wqed_core::observables::{concurrence, port_intensities, purity};
use wqed_core::operators::{build_hamiltonian, jump_operators};
use wqed_core::steady::solve;
use wqed_core::{c64, Error, SystemParams};

#[test]
fn classification_examples() {
    let c = classify_pure_state(&params(0.5, 0.5, 1.0, 2.0 * PI / 3.0, PI), &fwd(1.0));
    assert_eq!((c.exists, c.family, c.n), (true, PureFamily::SymmetricLock, Some(1)));
    let c = classify_pure_state(&params(0.5, -0.5, 1.0, FRAC_PI_2, 0.0), &fwd(1.0));
    assert_eq!((c.family, c.n), (PureFamily::AntisymmetricPinned, Some(0)));
    let c = classify_pure_state(&params(0.5, 0.5, 1.0, PI / 3.0, FRAC_PI_2), &fwd(1.0));
    assert!(!c.exists);
    assert_eq!(c.family, PureFamily::None);
    assert!(c.state.is_none());
}

#[test]
fn undriven_system_is_trivially_pure() {
    let c = classify_pure_state(&params(0.3, 0.1, 1.0, 0.4, 0.9), &fwd(0.0));
    assert_eq!(c.family, PureFamily::TrivialGround);
    assert_eq!(c.state.unwrap()[basis::GG], c64(1.0, 0.0));
}

#[test]
fn lock_requires_exchange_to_exceed_detuning() {
    // |Δ| > J cannot satisfy Δ = J cos θ
    for theta in [0.3, 1.0, 2.0, 4.0] {
        let c = classify_pure_state(&params(1.2, 1.2, 1.0, theta, 0.0), &fwd(1.0));
        assert!(!c.exists);
    }
    // and a vanishing J sin θ is excluded
    let c = classify_pure_state(&params(1.0, 1.0, 1.0, 0.0, 0.0), &fwd(1.0));
    assert!(!c.exists);
}

#[test]
fn extra_losses_destroy_the_pure_state() {
    let p = SystemParams::builder()
        .detunings(0.5, 0.5)
        .exchange(1.0, 2.0 * PI / 3.0)
        .phi(PI)
        .losses(0.1, 0.0)
        .build()
        .unwrap();
    assert!(!classify_pure_state(&p, &fwd(1.0)).exists);
}

#[test]
fn phase_match_detection_is_sharp() {
    assert_eq!(phase_match_order(3.0 * PI), Some(3));
    assert_eq!(phase_match_order(PI + 1e-13), Some(1));
    assert_eq!(phase_match_order(PI + 1e-9), None);
}

fn pure_points() -> Vec<(SystemParams, f64)> {
    let mut out = Vec::new();
    for (phi, theta) in [(0.0, PI / 3.0), (0.0, 5.0 * PI / 3.0), (PI, 2.0 * PI / 3.0), (PI, 4.0 * PI / 3.0), (2.0 * PI, 1.0)] {
        let s = if (phi / PI).round() as i64 % 2 == 0 { 1.0 } else { -1.0 };
        for j in [0.6, 1.0, 1.7] {
            let delta = s * j * f64::cos(theta);
            out.push((params(delta, delta, j, theta, phi), -delta));
        }
    }
    for phi in [0.0, PI] {
        for theta in [FRAC_PI_2, 3.0 * FRAC_PI_2] {
            for delta in [0.5, -1.3, 0.0] {
                out.push((params(delta, -delta, 1.0, theta, phi), 0.0));
            }
        }
    }
    out
}

#[test]
fn pure_states_are_dark_eigenstates() {
    for (p, energy) in pure_points() {
        for d in [fwd(0.8), bwd(0.8)] {
            let c = classify_pure_state(&p, &d);
            assert!(c.exists, "{p:?}");
            let psi = c.state.unwrap();
            assert!((wqed_core::numerics::vec_norm(&psi) - 1.0).abs() < 1e-14);
            let jumps = jump_operators(p.phi());
            for j in [&jumps.left, &jumps.right] {
                assert!(wqed_core::numerics::vec_norm(&j.matvec(&psi)) < 1e-10);
            }
            let hpsi = build_hamiltonian(&p, &d).matvec(&psi);
            let e = c.energy.unwrap();
            assert!((e - energy).abs() < 1e-12);
            let res: Vec<_> = hpsi.iter().zip(&psi).map(|(a, b)| a - b * e).collect();
            assert!(wqed_core::numerics::vec_norm(&res) < 1e-10, "{p:?} {:?}", d.port());
        }
    }
}

#[test]
fn lock_normalization_is_consistent() {
    for theta in [0.3, 1.0, 2.5] {
        let (j, a) = (1.3, 0.9);
        let delta = j * f64::cos(theta);
        let lhs = 2.0 * a * a + (j * f64::sin(theta)).powi(2);
        let rhs = 2.0 * a * a + j * j - delta * delta;
        assert!((lhs - rhs).abs() < 1e-12);
    }
}

#[test]
fn closed_form_concurrence_matches_solver() {
    for (p, _) in pure_points() {
        for pw in [0.1, 1.0, 4.0] {
            let d = fwd(pw);
            let ss = solve(&p, &d).unwrap();
            assert!((purity(&ss.rho) - 1.0).abs() < 1e-8);
            let c = concurrence(&ss.rho).unwrap();
            let cf = closed_form_concurrence(&p, &d).unwrap();
            assert!((c - cf).abs() < 1e-6, "{p:?} p={pw}: {c} vs {cf}");
            let i = port_intensities(&ss.rho, &p, &d).unwrap();
            assert!((i.t - 1.0).abs() < 1e-8 && i.r.abs() < 1e-8);
        }
    }
}

#[test]
fn closed_form_concurrence_examples() {
    let p = params(0.5, 0.5, 1.0, 2.0 * PI / 3.0, PI);
    assert!((closed_form_concurrence(&p, &fwd(1.0)).unwrap() - 8.0 / 11.0).abs() < 1e-15);
    assert!(closed_form_concurrence(&p, &fwd(1e8)).unwrap() > 1.0 - 1e-7);
    let p = params(0.5, 0.5, 1.0, 1.0, 0.4);
    assert_eq!(closed_form_concurrence(&p, &fwd(1.0)), Err(Error::NoPureState));
}

#[test]
fn j0_transmission_examples() {
    let p = params(0.0, 0.0, 0.0, 0.0, PI);
    assert!((analytic_t_j0(0.0, &p, &fwd(1.0)) - 3.0 / 11.0).abs() < 1e-15);
    assert!((analytic_t_j0(1e4, &p, &fwd(1.0)) - 1.0).abs() < 1e-6);
    for pw in [0.1, 1.0, 5.0] {
        let t0 = analytic_t_j0(0.0, &p, &fwd(pw));
        for i in 1..50 {
            let delta = 0.05 * i as f64;
            assert!(analytic_t_j0(delta, &p, &fwd(pw)) > t0);
            assert!(analytic_t_j0(-delta, &p, &fwd(pw)) > t0);
        }
    }
}

#[test]
fn weak_drive_formula_is_port_and_power_independent_limit() {
    let mut r = rng(71);
    for _ in 0..10 {
        let p = random_params(&mut r, false);
        let tc = weak_drive_tc(&p);
        for d in [fwd(1e-6), bwd(1e-6)] {
            let ss = solve(&p, &d).unwrap();
            let i = port_intensities(&ss.rho, &p, &d).unwrap();
            assert!((i.t_c - tc).abs() <= 1e-2 * tc.max(1e-3));
        }
    }
}

#[test]
fn far_detuned_qubits_are_transparent_in_linear_response() {
    // far detuned qubits do not scatter
    let p = params(1e4, 1e4, 0.0, 0.0, 0.3);
    assert!((weak_drive_tc(&p) - 1.0).abs() < 1e-3);
}

#[test]
fn symmetry_report_examples() {
    let p = params(0.5, 0.5, 1.0, 3.0 * FRAC_PI_4, FRAC_PI_4);
    let rep = verify_symmetries(&p, &fwd(1.0)).unwrap();
    assert!(rep.max_residual() <= 1e-9, "{rep:?}");
    assert!(rep.exchange_trs_breaking > 0.1);

    let p = params(0.5, 0.5, 1.0, 0.0, FRAC_PI_4);
    let rep = verify_symmetries(&p, &fwd(2.0)).unwrap();
    assert!(rep.max_residual() <= 1e-9);
    assert_eq!(rep.exchange_trs_breaking, 0.0);

    let p = params(0.5, -0.1, 1.0, 1.0, FRAC_PI_4);
    let rep = verify_symmetries(&p, &fwd(2.0)).unwrap();
    assert!(rep.swap_trace_distance.is_none());
    assert!(rep.time_reversal_residual < 1e-14);
}

#[test]
fn symmetry_report_on_random_sets() {
    let mut r = rng(73);
    for _ in 0..10 {
        let p = random_params(&mut r, true);
        let rep = verify_symmetries(&p, &bwd(r.random_range(0.01..4.0))).unwrap();
        assert!(rep.max_residual() <= 1e-9, "{p:?} {rep:?}");
    }
}
