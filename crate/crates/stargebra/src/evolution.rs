//! Cayley transforms of self-adjoint matrices, spectral integrals with
//! unbounded-valued symbols on finite resolutions, and the one-parameter
//! unitary group U_t = exp(−ita) with its initial value problem.

use num_complex::Complex64;

use crate::cmat::{c, cr, identity, require_hermitian, require_square, solve, CMat, CVec};
use crate::eigen::{hermitian_eig, normal_eig, HermitianEigen};
use crate::error::{Error, Result};
use crate::measures::{pi_p, Resolution};

/// A Hermitian matrix, possibly the truncation of an unbounded diagonal
/// model (eigenvalues growing with the index). At finite truncation the
/// domain questions collapse: every operator here is bounded.
#[derive(Debug, Clone)]
pub struct SelfAdjointModel {
    matrix: CMat,
}

impl SelfAdjointModel {
    pub fn new(matrix: CMat, tol: f64) -> Result<SelfAdjointModel> {
        require_square(&matrix, "SelfAdjointModel")?;
        require_hermitian(&matrix, tol.max(1e-12) * 100.0, "SelfAdjointModel")?;
        Ok(SelfAdjointModel { matrix })
    }

    /// Truncated diagonal model with eigenvalues f(0), …, f(n−1).
    pub fn truncated_diagonal(n: usize, f: impl Fn(usize) -> f64) -> SelfAdjointModel {
        let m = CMat::from_fn(n, n, |i, j| if i == j { cr(f(i)) } else { Complex64::ZERO });
        SelfAdjointModel { matrix: m }
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Cayley transform u = (a − i·e)(a + i·e)⁻¹: unitary, with 1 absent
/// from its point spectrum for bounded Hermitian a.
pub fn cayley(a: &SelfAdjointModel) -> Result<CMat> {
    let n = a.dim();
    let i_id = identity(n).map(|z| z * c(0.0, 1.0));
    solve(&(a.matrix() + &i_id), &(a.matrix() - &i_id))
}

/// Inverse Cayley transform a = i(e + u)(e − u)⁻¹ of a unitary u with
/// 1 ∉ sp(u). An eigenvalue at 1 means the inverse transform would be
/// unbounded; it is rejected.
pub fn inverse_cayley(u: &CMat, tol: f64, seed: u64) -> Result<CMat> {
    let n = require_square(u, "inverse_cayley")?;
    let unitary_defect = (u.adjoint() * u - identity(n)).norm();
    if unitary_defect > tol.max(1e-12) * 100.0 * (n as f64).sqrt() {
        return Err(Error::Precondition(format!(
            "inverse_cayley: input is not unitary (‖u*u − e‖ = {unitary_defect:.3e})"
        )));
    }
    let eig = normal_eig(u, tol.max(1e-12) * 100.0, seed)?;
    let dist1 = eig
        .values
        .iter()
        .map(|z| (z - cr(1.0)).norm())
        .fold(f64::MAX, f64::min);
    if dist1 <= tol.max(1e-12) {
        return Err(Error::NotInvertible(format!(
            "inverse_cayley: 1 lies in the spectrum (distance {dist1:.3e}); the transform is unbounded"
        )));
    }
    let plus = identity(n) + u;
    let minus = identity(n) - u;
    Ok(solve(&minus, &plus)?.map(|z| z * c(0.0, 1.0)))
}

/// Ψ_P(f) = Σ f(λᵢ)·Pᵢ for symbols with arbitrarily large (finite)
/// values. On a finite resolution the domain 𝒟_f is the whole space and
/// the addition/multiplication inclusions hold with equality; only a
/// non-finite value at a support atom is rejected.
pub fn psi_p(p: &Resolution, f: impl Fn(Complex64) -> Complex64) -> Result<CMat> {
    pi_p(p, f)
}

/// The evolution operator family U_t = exp(−ita), precomputed from one
/// Hermitian eigendecomposition so that repeated times are cheap and
/// exact on the resolution.
pub struct Propagator {
    eig: HermitianEigen,
}

impl Propagator {
    pub fn new(a: &SelfAdjointModel) -> Result<Propagator> {
        Ok(Propagator {
            eig: hermitian_eig(a.matrix())?,
        })
    }

    /// U_t·x = Σ e^(−itλ)·P_λ·x.
    pub fn apply(&self, t: f64, x: &CVec) -> Result<CVec> {
        let n = self.eig.values.len();
        if x.len() != n {
            return Err(Error::DimensionMismatch("Propagator::apply: vector length".into()));
        }
        let coords = self.eig.vectors.adjoint() * x;
        let phased = CVec::from_iterator(
            n,
            coords
                .iter()
                .zip(&self.eig.values)
                .map(|(z, l)| z * Complex64::from_polar(1.0, -t * l)),
        );
        Ok(&self.eig.vectors * phased)
    }

    /// U_t as a matrix.
    pub fn matrix(&self, t: f64) -> CMat {
        self.eig.apply(|l| Complex64::from_polar(1.0, -t * l))
    }
}

/// One-shot evolution U_t·x for a Hermitian operator.
pub fn evolve(a: &SelfAdjointModel, x: &CVec, t: f64) -> Result<CVec> {
    Propagator::new(a)?.apply(t, x)
}

/// Residual of the initial value problem generator at step h:
/// ‖−(1/ih)(U_{t+h}x − U_t x) − a·U_t x‖, which is O(h) with constant
/// about ‖a²x‖/2.
pub fn ivp_residual(a: &SelfAdjointModel, x: &CVec, t: f64, h: f64) -> Result<f64> {
    if h == 0.0 {
        return Err(Error::Precondition("ivp_residual: h must be nonzero".into()));
    }
    let prop = Propagator::new(a)?;
    let u_t_x = prop.apply(t, x)?;
    let u_th_x = prop.apply(t + h, x)?;
    // −(1/ih)·Δ = (i/h)·Δ.
    let diff = (&u_th_x - &u_t_x).map(|z| z * c(0.0, 1.0 / h));
    let generator = a.matrix() * &u_t_x;
    Ok((diff - generator).norm())
}
