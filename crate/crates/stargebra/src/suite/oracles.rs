//! Independent reference computations used to cross-check the main
//! operations. These deliberately avoid the code paths they validate:
//! the matrix exponential here is scaling-and-squaring (no spectral
//! decomposition), matching against the eigenvalue route.

use crate::cmat::CMat;

/// Matrix exponential by scaling and squaring with a fixed-order Taylor
/// kernel. Accuracy ~1e-13 relative at desk scale, independent of any
/// eigendecomposition.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    let norm = a.norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.map(|z| z / 2f64.powi(squarings as i32));
    // Taylor series of the scaled matrix (‖·‖ ≤ 0.5 ⇒ 20 terms suffice).
    let mut term = CMat::identity(n, n);
    let mut sum = CMat::identity(n, n);
    for k in 1..=20 {
        term = &term * &scaled;
        term = term.map(|z| z / k as f64);
        sum += &term;
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::{c, cr, identity};

    #[test]
    fn expm_of_zero_is_identity() {
        assert!((expm(&CMat::zeros(3, 3)) - identity(3)).norm() < 1e-15);
    }

    #[test]
    fn expm_of_diagonal() {
        let d = CMat::from_fn(2, 2, |i, j| {
            if i == j {
                if i == 0 { cr(1.0) } else { c(0.0, std::f64::consts::PI) }
            } else {
                num_complex::Complex64::ZERO
            }
        });
        let e = expm(&d);
        assert!((e[(0, 0)] - cr(1.0f64.exp())).norm() < 1e-13);
        assert!((e[(1, 1)] - cr(-1.0)).norm() < 1e-13);
    }

    #[test]
    fn expm_group_property() {
        let mut rng = crate::random::rng(3);
        let a = crate::random::complex_matrix(&mut rng, 4).map(|z| z * 0.3);
        let e1 = expm(&a);
        let half = expm(&a.map(|z| z * 0.5));
        assert!(((&half * &half) - &e1).norm() < 1e-12 * e1.norm());
    }
}
