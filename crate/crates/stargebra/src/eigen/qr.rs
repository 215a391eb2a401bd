//! Eigenvalues of a general complex matrix: Householder reduction to
//! Hessenberg form followed by the explicitly shifted QR iteration with
//! Wilkinson shifts and exceptional shifts on stagnation.
//!
//! nalgebra's Schur iteration stalls on companion-type matrices (the QR
//! fixed points), so this solver is used for every non-Hermitian
//! eigenvalue query in the crate.

use num_complex::Complex64;

use crate::cmat::CMat;
use crate::error::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;
const EXCEPTIONAL_EVERY: usize = 10;

/// Reduce to upper Hessenberg form by complex Householder reflections.
/// Only the Hessenberg factor is kept; similarity is implicit.
fn hessenberg(mut a: CMat) -> CMat {
    let n = a.nrows();
    if n < 3 {
        return a;
    }
    for k in 0..n - 2 {
        // Householder vector annihilating a[k+2.., k].
        let mut alpha2 = 0.0;
        for i in k + 1..n {
            alpha2 += a[(i, k)].norm_sqr();
        }
        if alpha2 == 0.0 {
            continue;
        }
        let alpha = alpha2.sqrt();
        let pivot = a[(k + 1, k)];
        let phase = if pivot.norm() > 0.0 {
            pivot / pivot.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let beta = -phase * alpha;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= beta;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // a ← (I − 2vv†/‖v‖²) a (I − 2vv†/‖v‖²), applied to the trailing block.
        for j in k..n {
            let mut dot = Complex64::ZERO;
            for (idx, i) in (k + 1..n).enumerate() {
                dot += v[idx].conj() * a[(i, j)];
            }
            let scale = dot * 2.0 / vnorm2;
            for (idx, i) in (k + 1..n).enumerate() {
                let delta = scale * v[idx];
                a[(i, j)] -= delta;
            }
        }
        for i in 0..n {
            let mut dot = Complex64::ZERO;
            for (idx, j) in (k + 1..n).enumerate() {
                dot += a[(i, j)] * v[idx];
            }
            let scale = dot * 2.0 / vnorm2;
            for (idx, j) in (k + 1..n).enumerate() {
                let delta = scale * v[idx].conj();
                a[(i, j)] -= delta;
            }
        }
        a[(k + 1, k)] = beta;
        for i in k + 2..n {
            a[(i, k)] = Complex64::ZERO;
        }
    }
    a
}

/// Eigenvalues of the trailing 2×2 block; the Wilkinson shift is the one
/// closer to the bottom-right entry.
fn wilkinson_shift(h: &CMat, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    let l1 = (tr + disc) * 0.5;
    let l2 = (tr - disc) * 0.5;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicitly shifted QR sweep on the active block h[lo..=hi] using
/// Givens rotations: H − σI = QR, H ← RQ + σI.
fn qr_sweep(h: &mut CMat, lo: usize, hi: usize, shift: Complex64) {
    let m = hi - lo + 1;
    if m < 2 {
        return;
    }
    // Record the rotations while forming R in place.
    let mut rotations: Vec<(Complex64, f64)> = Vec::with_capacity(m - 1);
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    for i in lo..hi {
        let x = h[(i, i)];
        let y = h[(i + 1, i)];
        let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
        // G = [[c, s], [−s̄, c]] with c = |x|/ρ, s = phase(x)·ȳ/ρ zeroes y.
        let (cs, sn) = if norm == 0.0 {
            (1.0, Complex64::ZERO)
        } else {
            let phase = if x.norm() > 0.0 { x / x.norm() } else { Complex64::new(1.0, 0.0) };
            (x.norm() / norm, phase * y.conj() / norm)
        };
        for j in i..=hi {
            let hi_j = h[(i, j)];
            let hip_j = h[(i + 1, j)];
            h[(i, j)] = hi_j * cs + hip_j * sn;
            h[(i + 1, j)] = -hi_j * sn.conj() + hip_j * cs;
        }
        rotations.push((sn, cs));
    }
    // H ← R Q: apply the adjoint rotations on the right.
    for (idx, i) in (lo..hi).enumerate() {
        let (sn, cs) = rotations[idx];
        let top = lo;
        for r in top..=(i + 1).min(hi) {
            let h_ri = h[(r, i)];
            let h_rip = h[(r, i + 1)];
            h[(r, i)] = h_ri * cs + h_rip * sn.conj();
            h[(r, i + 1)] = -h_ri * sn + h_rip * cs;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Eigenvalues (with algebraic multiplicity, length n) of a general
/// complex square matrix.
pub fn general_eigenvalues(a: &CMat) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    // Normalize scale so deflation thresholds are relative.
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(vec![Complex64::ZERO; n]);
    }
    let mut h = hessenberg(a.map(|z| z / scale));

    let eps = f64::EPSILON;
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut sweeps_since_deflation = 0usize;
    let mut total_budget = MAX_SWEEPS_PER_EIGENVALUE * n;

    loop {
        // Zero out negligible subdiagonals.
        for i in 0..hi {
            let t = h[(i, i)].norm() + h[(i + 1, i + 1)].norm();
            let tst = if t > 0.0 { t } else { 1.0 };
            if h[(i + 1, i)].norm() <= eps * tst {
                h[(i + 1, i)] = Complex64::ZERO;
            }
        }
        // Deflate converged trailing eigenvalues.
        while hi > 0 && h[(hi, hi - 1)] == Complex64::ZERO {
            eigs.push(h[(hi, hi)]);
            hi -= 1;
            sweeps_since_deflation = 0;
        }
        if hi == 0 {
            eigs.push(h[(0, 0)]);
            break;
        }
        // Active block [lo..=hi]: walk up to the nearest zero subdiagonal.
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)] != Complex64::ZERO {
            lo -= 1;
        }

        if total_budget == 0 {
            return Err(Error::NoConvergence(format!(
                "QR iteration exhausted its sweep budget with {} eigenvalues unresolved",
                hi + 1
            )));
        }
        total_budget -= 1;
        sweeps_since_deflation += 1;

        let shift = if sweeps_since_deflation.is_multiple_of(EXCEPTIONAL_EVERY) {
            // Exceptional shift breaks the symmetry that stalls Wilkinson
            // shifts on companion-type blocks.
            h[(hi, hi)] + h[(hi, hi - 1)].norm() * 0.75
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_sweep(&mut h, lo, hi, shift);
    }

    Ok(eigs.into_iter().map(|z| z * scale).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::{c, cr};

    #[test]
    fn diagonal_matrix() {
        let a = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![cr(3.0), c(1.0, 2.0)]));
        let mut e = general_eigenvalues(&a).unwrap();
        e.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((e[0] - c(1.0, 2.0)).norm() < 1e-12);
        assert!((e[1] - cr(3.0)).norm() < 1e-12);
    }

    #[test]
    fn nilpotent_jordan_block() {
        let mut a = CMat::zeros(4, 4);
        for i in 0..3 {
            a[(i, i + 1)] = cr(1.0);
        }
        let e = general_eigenvalues(&a).unwrap();
        assert_eq!(e.len(), 4);
        for z in e {
            assert!(z.norm() < 1e-8);
        }
    }

    #[test]
    fn cyclic_shift_matrices_converge() {
        // The case nalgebra's Schur cannot handle; eigenvalues are the
        // N-th roots of unity.
        for n in [4usize, 8, 16, 32] {
            let mut s = CMat::zeros(n, n);
            for i in 0..n {
                s[((i + 1) % n, i)] = cr(1.0);
            }
            let e = general_eigenvalues(&s).unwrap();
            assert_eq!(e.len(), n);
            for k in 0..n {
                let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
                let dist = e.iter().map(|z| (z - root).norm()).fold(f64::MAX, f64::min);
                assert!(dist < 1e-8, "shift{n}: missing root {root}, nearest at {dist:.2e}");
            }
        }
    }

    #[test]
    fn random_matrix_determinant_residual() {
        let mut rng = crate::random::rng(11);
        for n in [3usize, 6, 9] {
            let a = crate::random::complex_matrix(&mut rng, n);
            let eigs = general_eigenvalues(&a).unwrap();
            assert_eq!(eigs.len(), n);
            // det(a − λI) ≈ 0 and Σλ = tr(a).
            let tr: Complex64 = (0..n).map(|i| a[(i, i)]).sum();
            let sum: Complex64 = eigs.iter().sum();
            assert!((tr - sum).norm() < 1e-9 * a.norm().max(1.0));
            for l in &eigs {
                let m = &a - CMat::identity(n, n) * *l;
                assert!(m.determinant().norm() < 1e-7 * a.norm().powi(n as i32).max(1.0));
            }
        }
    }

    #[test]
    fn scale_invariance() {
        let mut rng = crate::random::rng(5);
        let a = crate::random::complex_matrix(&mut rng, 5);
        let big = a.map(|z| z * 1e150);
        let e = general_eigenvalues(&big).unwrap();
        assert!(e.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        let tr: Complex64 = (0..5).map(|i| big[(i, i)]).sum();
        let sum: Complex64 = e.iter().sum();
        assert!((tr - sum).norm() < 1e-9 * big.norm());
    }
}
