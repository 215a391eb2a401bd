//! Seeded generators for matrices with prescribed structure. All
//! randomized paths thread an explicit rng so runs are reproducible.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cmat::{c, cr, CMat, CVec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box–Muller; keeps the dependency set small.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    c(gaussian(rng), gaussian(rng))
}

pub fn complex_matrix<R: Rng>(rng: &mut R, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| complex_gaussian(rng))
}

pub fn complex_vector<R: Rng>(rng: &mut R, n: usize) -> CVec {
    CVec::from_fn(n, |_, _| complex_gaussian(rng))
}

pub fn unit_vector<R: Rng>(rng: &mut R, n: usize) -> CVec {
    let v = complex_vector(rng, n);
    let norm = v.norm();
    v.map(|z| z / norm)
}

pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let a = complex_matrix(rng, n);
    (&a + a.adjoint()).map(|z| z * 0.5)
}

/// Haar-ish unitary: QR of a complex Gaussian matrix with the R diagonal
/// phases pushed into Q.
pub fn unitary<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let a = complex_matrix(rng, n);
    let qr = a.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                cr(1.0)
            }
        } else {
            Complex64::ZERO
        }
    });
    q * phases
}

/// Normal matrix with the given eigenvalues in a random eigenbasis.
pub fn normal_with_eigenvalues<R: Rng>(rng: &mut R, eigs: &[Complex64]) -> CMat {
    let n = eigs.len();
    let u = unitary(rng, n);
    let d = CMat::from_fn(n, n, |i, j| if i == j { eigs[i] } else { Complex64::ZERO });
    &u * d * u.adjoint()
}

pub fn normal<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let eigs: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
    normal_with_eigenvalues(rng, &eigs)
}

/// Positive semidefinite Gram matrix c†c.
pub fn positive<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let cmat = complex_matrix(rng, n);
    cmat.adjoint() * cmat
}

/// Hermitian projection of the given rank.
pub fn projection<R: Rng>(rng: &mut R, n: usize, rank: usize) -> CMat {
    let u = unitary(rng, n);
    let mut p = CMat::zeros(n, n);
    for k in 0..rank.min(n) {
        let col = u.column(k);
        p += col * col.adjoint();
    }
    p
}

/// Invertible matrix with σ_min ≥ min_sigma_ratio·σ_max, by rejection.
pub fn invertible<R: Rng>(rng: &mut R, n: usize, min_sigma_ratio: f64) -> CMat {
    loop {
        let a = complex_matrix(rng, n);
        let eigs = (a.adjoint() * &a).symmetric_eigen().eigenvalues;
        let smax = eigs.iter().cloned().fold(0.0f64, f64::max).max(0.0).sqrt();
        let smin = eigs.iter().cloned().fold(f64::MAX, f64::min).max(0.0).sqrt();
        if smax > 0.0 && smin >= min_sigma_ratio * smax {
            return a;
        }
    }
}

/// Pair of commuting Hermitian matrices (same random eigenbasis).
pub fn commuting_hermitian_pair<R: Rng>(rng: &mut R, n: usize) -> (CMat, CMat) {
    let u = unitary(rng, n);
    let d1 = CMat::from_fn(n, n, |i, j| if i == j { cr(gaussian(rng)) } else { Complex64::ZERO });
    let d2 = CMat::from_fn(n, n, |i, j| if i == j { cr(gaussian(rng)) } else { Complex64::ZERO });
    (&u * d1 * u.adjoint(), &u * d2 * u.adjoint())
}
