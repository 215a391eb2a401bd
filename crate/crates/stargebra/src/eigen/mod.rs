//! Eigendecompositions: Hermitian (delegated to nalgebra), general
//! complex (own shifted QR iteration), simultaneous diagonalization
//! of commuting Hermitian families, and SVD-based rank/nullspace helpers.

mod qr;
mod svd;

pub use qr::general_eigenvalues;
pub use svd::{jacobi_svd, Svd};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cmat::{is_normal, require_square, CMat, CVec};
use crate::error::{Error, Result};
use crate::random;

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors, in the order
    /// of `values`.
    pub vectors: CMat,
}

impl HermitianEigen {
    /// Reassemble Σ f(λᵢ)·uᵢuᵢ†.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> CMat {
        let n = self.values.len();
        let d = DMatrix::from_fn(n, n, |i, j| if i == j { f(self.values[i]) } else { Complex64::ZERO });
        &self.vectors * d * self.vectors.adjoint()
    }
}

/// Eigendecomposition of the Hermitian part (a + a†)/2; callers are
/// expected to have checked Hermiticity to their own tolerance.
pub fn hermitian_eig(a: &CMat) -> Result<HermitianEigen> {
    let n = require_square(a, "hermitian_eig")?;
    let sym = (a + a.adjoint()).map(|z| z * 0.5);
    let se = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &se.eigenvectors.column(i));
    }
    Ok(HermitianEigen { values, vectors })
}

/// Result of diagonalizing a normal matrix: b = U·diag(values)·U†.
pub struct NormalEigen {
    pub values: Vec<Complex64>,
    pub vectors: CMat,
}

/// Unitary diagonalization of a normal matrix through the joint
/// diagonalization of its two commuting Hermitian parts. Avoids the
/// non-Hermitian QR path entirely, so eigenvectors inherit the Hermitian
/// solver's stability.
pub fn normal_eig(b: &CMat, tol: f64, seed: u64) -> Result<NormalEigen> {
    let n = require_square(b, "normal_eig")?;
    if !is_normal(b, tol) {
        return Err(Error::NotNormal(format!(
            "‖b*b − bb*‖ = {:.3e} exceeds tol·max(‖b‖²,1)",
            crate::cmat::normal_defect(b)
        )));
    }
    let (h, k) = crate::cmat::hermitian_parts(b);
    let u = joint_diagonalize(&[h, k], tol, seed)?;
    let d = u.adjoint() * b * &u;
    let scale = b.norm().max(1.0);
    let mut offdiag = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                offdiag = offdiag.max(d[(i, j)].norm());
            }
        }
    }
    if offdiag > tol.max(1e-12) * scale * 10.0 {
        return Err(Error::ResidualTooLarge {
            context: "normal_eig off-diagonal".into(),
            residual: offdiag,
            tolerance: tol * scale * 10.0,
        });
    }
    Ok(NormalEigen {
        values: (0..n).map(|i| d[(i, i)]).collect(),
        vectors: u,
    })
}

// Splitting threshold for nearly-degenerate combo eigenvalues: generous
// enough that splits are trustworthy, refinement handles the rest.
const SPLIT_GAP: f64 = 1e-5;
const JOINT_DIAG_RETRIES: usize = 8;

/// Unitary U simultaneously diagonalizing a family of commuting Hermitian
/// matrices: one random real combination is diagonalized, degenerate
/// blocks are refined with fresh combinations, and the whole attempt is
/// re-randomized (up to 8 times) if the family fails the final
/// diagonality check.
pub fn joint_diagonalize(family: &[CMat], tol: f64, seed: u64) -> Result<CMat> {
    if family.is_empty() {
        return Err(Error::DimensionMismatch("joint_diagonalize: empty family".into()));
    }
    let n = family[0].nrows();
    for f in family {
        let m = require_square(f, "joint_diagonalize")?;
        if m != n {
            return Err(Error::DimensionMismatch(format!(
                "joint_diagonalize: dimensions {n} and {m}"
            )));
        }
    }
    let mut rng = random::rng(seed);
    let check_tol = tol.max(1e-12);

    let mut best: Option<(f64, CMat)> = None;
    for _attempt in 0..JOINT_DIAG_RETRIES {
        let mut u = CMat::identity(n, n);
        let mut blocks: Vec<Vec<usize>> = vec![(0..n).collect()];
        // Two refinement passes per attempt: the first separates generic
        // eigenvalues, the second splits accidental near-collisions.
        for _pass in 0..2 {
            if blocks.iter().all(|b| b.len() == 1) {
                break;
            }
            let coeffs: Vec<f64> = family.iter().map(|_| random::gaussian(&mut rng)).collect();
            let mut combo = CMat::zeros(n, n);
            for (c, f) in coeffs.iter().zip(family) {
                combo += f.map(|z| z * *c);
            }
            let scale = combo.norm().max(1.0);
            let mut next_blocks = Vec::new();
            for block in &blocks {
                if block.len() == 1 {
                    next_blocks.push(block.clone());
                    continue;
                }
                let ub = columns(&u, block);
                let compressed = ub.adjoint() * &combo * &ub;
                let eig = hermitian_eig(&compressed)?;
                let rotated = &ub * &eig.vectors;
                for (idx, &col) in block.iter().enumerate() {
                    u.set_column(col, &rotated.column(idx));
                }
                // Split the block where consecutive eigenvalues separate.
                let mut start = 0;
                for i in 1..block.len() {
                    if eig.values[i] - eig.values[i - 1] > SPLIT_GAP * scale {
                        next_blocks.push(block[start..i].to_vec());
                        start = i;
                    }
                }
                next_blocks.push(block[start..].to_vec());
            }
            blocks = next_blocks;
        }
        let residual = family
            .iter()
            .map(|f| off_diagonal_norm(&(u.adjoint() * f * &u)) / f.norm().max(1.0))
            .fold(0.0f64, f64::max);
        if residual <= check_tol * 10.0 {
            return Ok(u);
        }
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, u));
        }
    }
    let (residual, _) = best.unwrap();
    Err(Error::NoConvergence(format!(
        "joint diagonalization residual {residual:.3e} after {JOINT_DIAG_RETRIES} re-randomizations"
    )))
}

fn columns(u: &CMat, cols: &[usize]) -> CMat {
    let n = u.nrows();
    let mut out = CMat::zeros(n, cols.len());
    for (idx, &c) in cols.iter().enumerate() {
        out.set_column(idx, &u.column(c));
    }
    out
}

fn off_diagonal_norm(a: &CMat) -> f64 {
    let mut s = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Thin SVD by one-sided Jacobi (see [`svd`] module for why nalgebra's
/// complex SVD is not used here).
pub fn svd(a: &CMat) -> Result<Svd> {
    jacobi_svd(a)
}

/// Numerical rank with relative threshold tol·σ_max.
pub fn rank(a: &CMat, tol: f64) -> Result<usize> {
    let sv = svd(a)?;
    let smax = sv.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sv.singular_values.iter().filter(|&&s| s > tol * smax).count())
}

/// Orthonormal basis of the (right) nullspace {x : a·x = 0}, threshold
/// tol·σ_max (every vector when a = 0).
pub fn nullspace(a: &CMat, tol: f64) -> Result<Vec<CVec>> {
    nullspace_with_floor(a, tol, 0.0)
}

/// Nullspace with an absolute singular-value floor: directions with
/// σ ≤ max(tol·σ_max, floor) count as null. The floor matters when the
/// operator itself is negligible relative to the scale of the problem
/// that produced it (a relative cut would then resolve noise rank).
pub fn nullspace_with_floor(a: &CMat, tol: f64, floor: f64) -> Result<Vec<CVec>> {
    // Pad wide matrices with zero rows so the thin SVD still carries a
    // full set of right-singular vectors.
    if a.nrows() < a.ncols() {
        let mut padded = CMat::zeros(a.ncols(), a.ncols());
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                padded[(i, j)] = a[(i, j)];
            }
        }
        return nullspace_with_floor(&padded, tol, floor);
    }
    let ncols = a.ncols();
    let sv = svd(a)?;
    let smax = sv.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = (tol * smax).max(floor);
    let mut kept = Vec::new();
    for j in 0..ncols {
        let s = sv.singular_values.get(j).copied().unwrap_or(0.0);
        if smax == 0.0 || s <= cut {
            kept.push(CVec::from_column_slice(sv.v.column(j).as_slice()));
        }
    }
    Ok(kept)
}

/// Orthonormal basis of the column space, threshold tol·σ_max.
pub fn column_space(a: &CMat, tol: f64) -> Result<Vec<CVec>> {
    let sv = svd(a)?;
    let smax = sv.singular_values.iter().cloned().fold(0.0, f64::max);
    let mut kept = Vec::new();
    if smax == 0.0 {
        return Ok(kept);
    }
    for (j, &s) in sv.singular_values.iter().enumerate() {
        if s > tol * smax {
            kept.push(CVec::from_column_slice(sv.u.column(j).as_slice()));
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::{c, cr};

    #[test]
    fn hermitian_eig_sorted_and_reconstructs() {
        let mut rng = random::rng(2);
        let a = random::hermitian(&mut rng, 6);
        let eig = hermitian_eig(&a).unwrap();
        for w in eig.values.windows(2) {
            assert!(w[0] <= w[1]);
        }
        let recon = eig.apply(cr);
        assert!((recon - &a).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn joint_diagonalize_commuting_pair() {
        let mut rng = random::rng(4);
        let (a, b) = random::commuting_hermitian_pair(&mut rng, 7);
        let u = joint_diagonalize(&[a.clone(), b.clone()], 1e-10, 99).unwrap();
        assert!(off_diagonal_norm(&(u.adjoint() * &a * &u)) < 1e-9 * a.norm().max(1.0));
        assert!(off_diagonal_norm(&(u.adjoint() * &b * &u)) < 1e-9 * b.norm().max(1.0));
        assert!((u.adjoint() * &u - CMat::identity(7, 7)).norm() < 1e-12);
    }

    #[test]
    fn joint_diagonalize_with_degeneracy() {
        // a has a double eigenvalue; b separates the degenerate pair.
        let mut rng = random::rng(8);
        let u0 = random::unitary(&mut rng, 4);
        let da = CMat::from_diagonal(&CVec::from_vec(vec![cr(1.0), cr(1.0), cr(2.0), cr(3.0)]));
        let db = CMat::from_diagonal(&CVec::from_vec(vec![cr(5.0), cr(-5.0), cr(0.0), cr(0.5)]));
        let a = &u0 * da * u0.adjoint();
        let b = &u0 * db * u0.adjoint();
        let u = joint_diagonalize(&[a.clone(), b.clone()], 1e-10, 17).unwrap();
        assert!(off_diagonal_norm(&(u.adjoint() * &a * &u)) < 1e-9 * a.norm());
        assert!(off_diagonal_norm(&(u.adjoint() * &b * &u)) < 1e-9 * b.norm());
    }

    #[test]
    fn normal_eig_of_unitary_shift() {
        let n = 8;
        let mut s = CMat::zeros(n, n);
        for i in 0..n {
            s[((i + 1) % n, i)] = cr(1.0);
        }
        let eig = normal_eig(&s, 1e-10, 3).unwrap();
        // Eigenvalues are the 8th roots of unity.
        for k in 0..n {
            let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            let dist = eig.values.iter().map(|z| (z - root).norm()).fold(f64::MAX, f64::min);
            assert!(dist < 1e-9, "missing root {root}");
        }
        let d = CMat::from_diagonal(&CVec::from_vec(eig.values.clone()));
        assert!((&eig.vectors * d * eig.vectors.adjoint() - &s).norm() < 1e-9);
    }

    #[test]
    fn normal_eig_rejects_non_normal() {
        let mut a = CMat::zeros(2, 2);
        a[(0, 1)] = cr(1.0);
        assert!(matches!(normal_eig(&a, 1e-10, 0), Err(Error::NotNormal(_))));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let mut a = CMat::zeros(3, 3);
        a[(0, 0)] = c(1.0, 2.0);
        let ns = nullspace(&a, 1e-12).unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((&a * v).norm() < 1e-12);
        }
    }
}
