//! Dense complex matrices and the handful of primitives everything else
//! is written in terms of: the Hilbert–Schmidt inner product, operator
//! norms, and validity checks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Default relative tolerance for rank cuts and residual checks.
pub const DEFAULT_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn trace(a: &CMat) -> Complex64 {
    (0..a.nrows().min(a.ncols())).map(|i| a[(i, i)]).sum()
}

/// Hilbert–Schmidt inner product ⟨a, b⟩ = tr(b† a), left-linear.
pub fn hs_inner(a: &CMat, b: &CMat) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| y.conj() * x).sum()
}

pub fn hs_norm(a: &CMat) -> f64 {
    a.norm()
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest singular value, via the top eigenvalue of the Hermitian Gram
/// matrix a†a (the Hermitian solver is the one decomposition this crate
/// trusts unconditionally).
pub fn operator_norm(a: &CMat) -> f64 {
    if a.iter().all(|z| z == &Complex64::ZERO) {
        return 0.0;
    }
    // Guard against overflow in the Gram product.
    let scale = max_abs(a);
    let scaled = a.map(|z| z / scale);
    let gram = scaled.adjoint() * &scaled;
    let top = gram
        .map(|z| z)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    scale * top.max(0.0).sqrt()
}

pub fn is_finite_mat(a: &CMat) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn require_finite(a: &CMat, what: &str) -> Result<()> {
    if !is_finite_mat(a) {
        return Err(Error::NonFinite(what.to_string()));
    }
    Ok(())
}

pub fn require_square(a: &CMat, what: &str) -> Result<usize> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "{what}: expected square matrix of dimension >= 1, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    require_finite(a, what)?;
    Ok(a.nrows())
}

pub fn require_same_dim(mats: &[CMat], what: &str) -> Result<usize> {
    let mut dim = None;
    for m in mats {
        let n = require_square(m, what)?;
        match dim {
            None => dim = Some(n),
            Some(d) if d != n => {
                return Err(Error::DimensionMismatch(format!(
                    "{what}: matrices of dimension {d} and {n}"
                )))
            }
            _ => {}
        }
    }
    dim.ok_or_else(|| Error::DimensionMismatch(format!("{what}: empty matrix list")))
}

/// Deviation from self-adjointness, ‖a − a†‖ (Frobenius).
pub fn hermitian_defect(a: &CMat) -> f64 {
    (a - a.adjoint()).norm()
}

pub fn is_hermitian(a: &CMat, tol: f64) -> bool {
    hermitian_defect(a) <= tol * a.norm().max(1.0)
}

pub fn require_hermitian(a: &CMat, tol: f64, what: &str) -> Result<()> {
    if !is_hermitian(a, tol) {
        return Err(Error::NotHermitian(format!(
            "{what}: ‖a − a*‖ = {:.3e}",
            hermitian_defect(a)
        )));
    }
    Ok(())
}

/// Deviation from normality, ‖a†a − aa†‖ (Frobenius).
pub fn normal_defect(a: &CMat) -> f64 {
    (a.adjoint() * a - a * a.adjoint()).norm()
}

/// Scale-invariant normality test: ‖a†a − aa†‖ ≤ tol·max(‖a‖², 1).
pub fn is_normal(a: &CMat, tol: f64) -> bool {
    let s = a.norm();
    normal_defect(a) <= tol * (s * s).max(1.0)
}

pub fn require_normal(a: &CMat, tol: f64, what: &str) -> Result<()> {
    if !is_normal(a, tol) {
        return Err(Error::NotNormal(format!(
            "{what}: ‖a*a − aa*‖ = {:.3e}",
            normal_defect(a)
        )));
    }
    Ok(())
}

/// Solve a·x = b by LU with partial pivoting.
pub fn solve(a: &CMat, b: &CMat) -> Result<CMat> {
    a.clone()
        .lu()
        .solve(b)
        .ok_or_else(|| Error::NotInvertible("singular linear solve".into()))
}

/// Hermitian and anti-Hermitian parts: a = h + i·k with h, k Hermitian.
pub fn hermitian_parts(a: &CMat) -> (CMat, CMat) {
    let adj = a.adjoint();
    let h = (a + &adj).map(|z| z * 0.5);
    let k = (a - &adj).map(|z| z * Complex64::new(0.0, -0.5));
    (h, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    #[test]
    fn hermitian_parts_reconstruct() {
        let mut rng = random::rng(7);
        let a = random::complex_matrix(&mut rng, 5);
        let (h, k) = hermitian_parts(&a);
        assert!(hermitian_defect(&h) < 1e-14);
        assert!(hermitian_defect(&k) < 1e-14);
        let recon = &h + k.map(|z| z * Complex64::new(0.0, 1.0));
        assert!((recon - &a).norm() < 1e-14 * a.norm());
    }

    #[test]
    fn hermitian_input_has_zero_anti_part() {
        let mut rng = random::rng(3);
        let a = random::hermitian(&mut rng, 4);
        let (h, k) = hermitian_parts(&a);
        assert!((h - &a).norm() < 1e-14 * a.norm());
        assert!(k.norm() < 1e-14 * a.norm());
    }

    #[test]
    fn i_times_identity_splits_to_anti_part() {
        let a = identity(3).map(|z| z * Complex64::new(0.0, 1.0));
        let (h, k) = hermitian_parts(&a);
        assert!(h.norm() < 1e-15);
        assert!((k - identity(3)).norm() < 1e-15);
    }

    #[test]
    fn operator_norm_of_nilpotent() {
        let mut a = CMat::zeros(2, 2);
        a[(0, 1)] = cr(2.0);
        assert!((operator_norm(&a) - 2.0).abs() < 1e-12);
    }
}
