// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra for matrices up to 16×16.
//!
//! Everything here is a pure function on value-type matrices. The algorithms
//! are the textbook robust ones rather than the fast ones:
//!
//! - kernels and ranks come from a one-sided (Hestenes) Jacobi SVD, which
//!   resolves small singular values to about `ε·‖M‖` absolute accuracy;
//! - eigenvalues come from a Householder reduction to Hessenberg form followed
//!   by single-shift complex QR, and every eigenvalue is certified afterwards
//!   by checking that `σ_min(M − λI) ≤ 10⁻¹⁰·‖M‖`;
//! - linear solves use LU with partial pivoting.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Shorthand constructor for a complex number.
#[inline]
pub const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Relative threshold used to certify eigenvalues.
pub const EIG_CERTIFY_TOL: f64 = 1e-10;

/// Default relative tolerance for kernel membership.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-9;

const SVD_MAX_SWEEPS: usize = 80;
const QR_MAX_ITER_PER_EIG: usize = 60;

/// Dense complex matrix stored in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![C64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        let m = Self { rows, cols, data };
        if !m.is_finite() {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(m)
    }

    /// Builds a square matrix from real row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), n * n);
        Self::from_fn(n, n, |i, j| c64(entries[i * n + j], 0.0))
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { C64::zero() })
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Largest entry of `|M − M†|`.
    pub fn hermiticity_error(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: CMatrix) -> CMatrix {
        &self * &rhs
    }
}

impl Mul<C64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: C64) -> CMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: f64) -> CMatrix {
        self.scale(c64(rhs, 0.0))
    }
}

fn zip_with(a: &CMatrix, b: &CMatrix, f: impl Fn(C64, C64) -> C64) -> CMatrix {
    assert!(
        a.rows == b.rows && a.cols == b.cols,
        "elementwise dimension mismatch"
    );
    CMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f(*x, *y)).collect(),
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Add for CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: CMatrix) -> CMatrix {
        &self + &rhs
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.scale(c64(-1.0, 0.0))
    }
}

/// Kronecker product, dimensions `(ra·rb) × (ca·cb)`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)]
    })
}

/// Euclidean norm of a vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩ = Σ conj(aᵢ)·bᵢ`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Singular values and right singular vectors of a matrix.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Nonincreasing.
    pub singular_values: Vec<f64>,
    /// Right singular vectors as columns, in the order of `singular_values`.
    pub v: CMatrix,
}

impl Svd {
    /// Spectral norm `σ_max`.
    pub fn norm(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }
}

/// One-sided Jacobi SVD (right vectors only).
pub fn svd(m: &CMatrix) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::NonFinite("svd input"));
    }
    let (rows, n) = (m.rows, m.cols);
    let mut a: Vec<Vec<C64>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![C64::zero(); n];
            e[j] = C64::one();
            e
        })
        .collect();

    // Columns below this squared norm are numerical zeros; rotating them only
    // shuffles rounding noise and can cycle forever.
    let frob2: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum();
    let negligible = (f64::EPSILON * f64::EPSILON) * frob2;
    let mut converged = n < 2;
    for _ in 0..SVD_MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha: f64 = a[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = inner(&a[p], &a[q]);
                let g = gamma.norm();
                if g == 0.0
                    || g <= f64::EPSILON * (alpha * beta).sqrt()
                    || alpha.min(beta) <= negligible
                {
                    continue;
                }
                rotated = true;
                // Rephase column q so the 2×2 Gram block becomes real symmetric.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let x = a[p][i];
                    let y = a[q][i] * phase;
                    a[p][i] = x * c - y * s;
                    a[q][i] = x * s + y * c;
                }
                for i in 0..n {
                    let x = v[p][i];
                    let y = v[q][i] * phase;
                    v[p][i] = x * c - y * s;
                    v[q][i] = x * s + y * c;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence {
            algorithm: "jacobi svd",
            iterations: SVD_MAX_SWEEPS,
        });
    }

    let sigma: Vec<f64> = a.iter().map(|col| vec_norm(col)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    let singular_values = order.iter().map(|&j| sigma[j]).collect();
    let v = CMatrix::from_fn(n, n, |i, k| v[order[k]][i]);
    Ok(Svd { singular_values, v })
}

/// Smallest singular value.
pub fn sigma_min(m: &CMatrix) -> Result<f64> {
    Ok(svd(m)?.singular_values.last().copied().unwrap_or(0.0))
}

/// Orthonormal basis of the kernel of a square matrix.
///
/// A right singular vector is kept when its singular value is at most
/// `tol·‖m‖₂`, so every returned `v` satisfies `‖m·v‖ ≤ tol·‖m‖₂`.
pub fn null_space(m: &CMatrix, tol: f64) -> Result<Vec<Vec<C64>>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let svd = svd(m)?;
    let cutoff = tol * svd.norm();
    Ok(svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(k, _)| svd.v.column(k))
        .collect())
}

/// Solves `a·x = b` by LU decomposition with partial pivoting.
pub fn solve(a: &CMatrix, b: &[C64]) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("rhs of length {n}"),
            got: format!("length {}", b.len()),
        });
    }
    let mut lu = a.clone();
    let mut x = b.to_vec();
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::Singular);
    }
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
            .unwrap_or(k);
        if lu[(pivot, k)].norm() <= f64::EPSILON * scale * n as f64 {
            return Err(Error::Singular);
        }
        if pivot != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            x.swap(k, pivot);
        }
        let d = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / d;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
            let xk = x[k];
            x[i] -= f * xk;
        }
    }
    for k in (0..n).rev() {
        let s: C64 = (k + 1..n).map(|j| lu[(k, j)] * x[j]).sum();
        x[k] = (x[k] - s) / lu[(k, k)];
    }
    Ok(x)
}

/// Unitary reduction to upper Hessenberg form (similarity by Householder reflectors).
fn hessenberg(m: &CMatrix) -> CMatrix {
    let n = m.rows;
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&v);
        if xnorm == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() == 0.0 {
            C64::one()
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let beta: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if beta == 0.0 {
            continue;
        }
        // H ← (I − 2vv†/β) H
        for j in 0..n {
            let s: C64 = (k + 1..n).map(|i| v[i - k - 1].conj() * h[(i, j)]).sum();
            let f = s * (2.0 / beta);
            for i in k + 1..n {
                h[(i, j)] -= v[i - k - 1] * f;
            }
        }
        // H ← H (I − 2vv†/β)
        for i in 0..n {
            let s: C64 = (k + 1..n).map(|j| h[(i, j)] * v[j - k - 1]).sum();
            let f = s * (2.0 / beta);
            for j in k + 1..n {
                h[(i, j)] -= f * v[j - k - 1].conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C64::zero();
        }
    }
    h
}

/// Complex Givens rotation `[c s; −s̄ c]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C64::zero());
    }
    if an == 0.0 {
        return (0.0, C64::one());
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let den = if (p + disc).norm() >= (p - disc).norm() {
        p + disc
    } else {
        p - disc
    };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// Eigenvalues of a Hessenberg matrix by shifted QR; only the active block is updated.
fn hessenberg_eigenvalues(mut h: CMatrix) -> Result<Vec<C64>> {
    let n = h.rows;
    let mut eig = vec![C64::zero(); n];
    let hnorm = h.norm_fro();
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // Look for a negligible subdiagonal entry in the active block.
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == 0.0 { hnorm } else { s };
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = C64::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > QR_MAX_ITER_PER_EIG {
            return Err(Error::NoConvergence {
                algorithm: "hessenberg qr",
                iterations: total,
            });
        }
        let shift = if iter % 11 == 0 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + c64(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            for i in lo..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(eig)
}

/// All eigenvalues of a square matrix (with multiplicity, in no particular order).
///
/// Each eigenvalue is certified: `σ_min(m − λI) ≤ 10⁻¹⁰·‖m‖₂`, i.e. some unit
/// vector `v` has `‖m·v − λv‖ ≤ 10⁻¹⁰·‖m‖₂`. A failed certification is an error.
pub fn eig_general(m: &CMatrix) -> Result<Vec<C64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("eigenvalue input"));
    }
    let eig = hessenberg_eigenvalues(hessenberg(m))?;
    let norm = svd(m)?.norm();
    if norm == 0.0 {
        return Ok(eig);
    }
    let bound = EIG_CERTIFY_TOL * norm;
    for (index, &lambda) in eig.iter().enumerate() {
        let shifted = m - &CMatrix::identity(m.rows).scale(lambda);
        let residual = sigma_min(&shifted)?;
        if residual > bound {
            return Err(Error::Uncertified {
                index,
                residual,
                bound,
            });
        }
    }
    Ok(eig)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn eigvalsh(m: &CMatrix) -> Result<Vec<f64>> {
    let mut ev: Vec<f64> = eig_general(&m.hermitian_part())?
        .into_iter()
        .map(|z| z.re)
        .collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}
