//! One-sided Jacobi SVD for complex matrices.
//!
//! nalgebra's complex SVD returns wrong factorizations on some
//! structured inputs (observed: a rank-one Hermitian projection with
//! ‖P² − P‖ ≈ 2e−16 reported σ_max ≈ 1.44 and non-singular vectors), so
//! every rank and nullspace decision in this crate runs on this solver
//! instead. One-sided Jacobi orthogonalizes the columns by unitary plane
//! rotations; singular values come out with high relative accuracy.

use num_complex::Complex64;

use crate::cmat::{CMat, CVec};
use crate::error::{Error, Result};

pub struct Svd {
    /// Left singular vectors, m×min(m,n), paired with `singular_values`.
    pub u: CMat,
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Right singular vectors as columns, n×min(m,n).
    pub v: CMat,
}

const MAX_SWEEPS: usize = 64;

/// Thin SVD a = u·diag(σ)·v† with σ descending.
pub fn jacobi_svd(a: &CMat) -> Result<Svd> {
    let (m, n) = (a.nrows(), a.ncols());
    if m < n {
        // Factor the adjoint and swap the roles of u and v.
        let swapped = jacobi_svd(&a.adjoint())?;
        return Ok(Svd {
            u: swapped.v,
            singular_values: swapped.singular_values,
            v: swapped.u,
        });
    }
    let mut work = a.clone();
    let mut v = CMat::identity(n, n);
    // Converged when every cross term is at the rounding floor of the
    // inner product itself, which carries ~m·ε of noise.
    let tol = f64::EPSILON * (m as f64).sqrt().max(8.0);
    let scale0 = (0..n).map(|j| work.column(j).norm()).fold(0.0f64, f64::max);
    if scale0 == 0.0 {
        let mut u = CMat::zeros(m, n);
        let sigmas = vec![0.0; n];
        complete_orthonormal(&mut u, &sigmas);
        return Ok(Svd {
            u,
            singular_values: sigmas,
            v,
        });
    }
    // Columns this far below scale contribute nothing above any rank
    // threshold; flushing them to exact zero keeps near-parallel columns
    // from spiralling into the denormal range, where norm² underflows
    // while cross products do not and Cauchy–Schwarz fails numerically.
    let flush = 1e-30 * scale0;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for j in 0..n {
            let nrm = work.column(j).norm();
            if nrm > 0.0 && nrm <= flush {
                for i in 0..m {
                    work[(i, j)] = Complex64::new(0.0, 0.0);
                }
            }
        }
        for p in 0..n {
            for q in p + 1..n {
                let col_p = work.column(p);
                let col_q = work.column(q);
                let alpha = col_p.norm_squared();
                let beta = col_q.norm_squared();
                let gamma: Complex64 = col_p.iter().zip(col_q.iter()).map(|(x, y)| x.conj() * y).sum();
                let gnorm = gamma.norm();
                if gnorm <= tol * (alpha * beta).sqrt() || gnorm == 0.0 {
                    continue;
                }
                rotated = true;
                // Dephase column q so the 2×2 Gram block is real, then a
                // classical Jacobi rotation.
                let phase = gamma / gnorm;
                let tau = (beta - alpha) / (2.0 * gnorm);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let xp = work[(i, p)];
                    let xq = work[(i, q)] * phase.conj();
                    work[(i, p)] = xp * c - xq * s;
                    work[(i, q)] = xp * s + xq * c;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)] * phase.conj();
                    v[(i, p)] = vp * c - vq * s;
                    v[(i, q)] = vp * s + vq * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided Jacobi SVD exceeded its sweep budget".into()));
    }

    // Singular values are the column norms; sort descending.
    let mut order: Vec<usize> = (0..n).collect();
    let sigmas: Vec<f64> = (0..n).map(|j| work.column(j).norm()).collect();
    order.sort_by(|&i, &j| sigmas[j].partial_cmp(&sigmas[i]).unwrap());

    let mut u = CMat::zeros(m, n);
    let mut v_sorted = CMat::zeros(n, n);
    let mut singular_values = Vec::with_capacity(n);
    for (placed, &j) in order.iter().enumerate() {
        let sigma = sigmas[j];
        singular_values.push(sigma);
        v_sorted.set_column(placed, &v.column(j));
        if sigma > 0.0 {
            let col = work.column(j) / Complex64::new(sigma, 0.0);
            u.set_column(placed, &col);
        }
    }
    // Columns with σ = 0 get an arbitrary orthonormal completion so u is
    // always an isometry on its column span.
    complete_orthonormal(&mut u, &singular_values);

    Ok(Svd {
        u,
        singular_values,
        v: v_sorted,
    })
}

fn complete_orthonormal(u: &mut CMat, sigmas: &[f64]) {
    let m = u.nrows();
    let n = u.ncols();
    let missing: Vec<usize> = (0..n).filter(|&j| sigmas[j] == 0.0).collect();
    if missing.is_empty() {
        return;
    }
    let kept: Vec<CVec> = (0..n)
        .filter(|&j| sigmas[j] > 0.0)
        .map(|j| CVec::from_column_slice(u.column(j).as_slice()))
        .collect();
    let mut basis = kept;
    let mut fill = missing.into_iter();
    let mut slot = fill.next();
    for i in 0..m {
        if slot.is_none() {
            break;
        }
        let mut cand = CVec::zeros(m);
        cand[i] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in &basis {
                let coeff = b.dotc(&cand);
                cand -= b.map(|z| z * coeff);
            }
        }
        let nrm = cand.norm();
        if nrm > 1e-8 {
            let unit = cand.map(|z| z / nrm);
            u.set_column(slot.unwrap(), &unit);
            basis.push(unit);
            slot = fill.next();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::cr;
    use crate::random;

    fn reconstruct(svd: &Svd) -> CMat {
        let k = svd.singular_values.len();
        let sigma = CMat::from_fn(k, k, |i, j| {
            if i == j {
                cr(svd.singular_values[i])
            } else {
                Complex64::ZERO
            }
        });
        &svd.u * sigma * svd.v.adjoint()
    }

    #[test]
    fn random_rectangular_reconstructs() {
        let mut rng = random::rng(17);
        for (m, n) in [(5usize, 5usize), (7, 3), (3, 7)] {
            let a = CMat::from_fn(m, n, |_, _| random::complex_gaussian(&mut rng));
            let svd = jacobi_svd(&a).unwrap();
            assert!((reconstruct(&svd) - &a).norm() < 1e-12 * a.norm());
            for w in svd.singular_values.windows(2) {
                assert!(w[0] >= w[1]);
            }
            let k = svd.singular_values.len();
            assert!((svd.u.adjoint() * &svd.u - CMat::identity(k, k)).norm() < 1e-12);
            assert!((svd.v.adjoint() * &svd.v - CMat::identity(k, k)).norm() < 1e-12);
        }
    }

    #[test]
    fn projection_has_unit_singular_values() {
        // The case that breaks nalgebra's complex SVD.
        let mut rng = random::rng(23);
        for rank in [1usize, 2, 3] {
            let p = random::projection(&mut rng, 5, rank);
            let svd = jacobi_svd(&p).unwrap();
            for (j, s) in svd.singular_values.iter().enumerate() {
                if j < rank {
                    assert!((s - 1.0).abs() < 1e-12, "σ_{j} = {s}");
                } else {
                    assert!(*s < 1e-12, "σ_{j} = {s}");
                }
            }
            assert!((reconstruct(&svd) - &p).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_matrix_and_rank_one() {
        let z = CMat::zeros(3, 3);
        let svd = jacobi_svd(&z).unwrap();
        assert!(svd.singular_values.iter().all(|s| *s == 0.0));
        // Completion still yields an orthonormal u.
        assert!((svd.u.adjoint() * &svd.u - CMat::identity(3, 3)).norm() < 1e-12);

        let mut r1 = CMat::zeros(4, 4);
        r1[(1, 2)] = Complex64::new(3.0, 4.0);
        let svd = jacobi_svd(&r1).unwrap();
        assert!((svd.singular_values[0] - 5.0).abs() < 1e-12);
        assert!(svd.singular_values[1..].iter().all(|s| *s < 1e-12));
    }

    #[test]
    fn tiny_singular_values_resolved() {
        // Diagonal with a genuinely tiny σ: one-sided Jacobi keeps its
        // relative accuracy instead of flooring at √ε.
        let d = CMat::from_fn(3, 3, |i, j| {
            if i == j {
                cr([1.0, 1e-12, 1e-14][i])
            } else {
                Complex64::ZERO
            }
        });
        let svd = jacobi_svd(&d).unwrap();
        assert!((svd.singular_values[1] - 1e-12).abs() < 1e-24);
        assert!((svd.singular_values[2] - 1e-14).abs() < 1e-26);
    }
}
