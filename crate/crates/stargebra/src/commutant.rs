//! Commutants, bicommutants, W*(S), maximal commutativity, and the
//! cyclic/separating duality — the von Neumann side of the toolkit at
//! matrix scale.

use crate::algebra::StarAlgebra;
use crate::cmat::{require_same_dim, CMat, CVec};
use crate::eigen;
use crate::error::{Error, Result};
use crate::subspace::{commutator_operator, krylov_span, unflatten, Subspace};

/// Nullspace threshold for the commutant solver, relative to σ_max.
const NULLSPACE_TOL: f64 = 1e-10;

/// Orthonormal basis of {x : x·s = s·x for every s ∈ S}, computed as the
/// joint nullspace of the stacked commutator operators. Always contains
/// the identity; S = ∅ gives all of M_n.
pub fn commutant(mats: &[CMat], ambient_dim: usize) -> Result<Subspace> {
    let n = if mats.is_empty() {
        ambient_dim
    } else {
        let n = require_same_dim(mats, "commutant")?;
        if ambient_dim != 0 && ambient_dim != n {
            return Err(Error::DimensionMismatch(format!(
                "commutant: ambient_dim {ambient_dim} vs matrices of dimension {n}"
            )));
        }
        n
    };
    if n == 0 {
        return Err(Error::DimensionMismatch("commutant: ambient dimension 0".into()));
    }
    let n2 = n * n;
    if mats.is_empty() {
        // Everything commutes with nothing: the full matrix space.
        let mut basis = Vec::with_capacity(n2);
        for j in 0..n {
            for i in 0..n {
                let mut e = CMat::zeros(n, n);
                e[(i, j)] = crate::cmat::cr(1.0);
                basis.push(e);
            }
        }
        return Subspace::from_span(n, &basis, 1e-12);
    }
    let mut stacked = CMat::zeros(n2 * mats.len(), n2);
    for (k, s) in mats.iter().enumerate() {
        let op = commutator_operator(s);
        for r in 0..n2 {
            for c in 0..n2 {
                stacked[(k * n2 + r, c)] = op[(r, c)];
            }
        }
    }
    // Absolute floor at the scale of the inputs: a scalar matrix has an
    // exactly-null commutator operator up to rounding, and a purely
    // relative cut would resolve the rank of that noise.
    let scale = mats.iter().map(|s| s.norm()).fold(0.0f64, f64::max);
    let null = eigen::nullspace_with_floor(&stacked, NULLSPACE_TOL, NULLSPACE_TOL * scale)?;
    let basis: Vec<CMat> = null.iter().map(|v| unflatten(v, n)).collect();
    Subspace::from_span(n, &basis, 1e-12)
}

/// S″: two nested commutant computations.
pub fn bicommutant(mats: &[CMat], ambient_dim: usize) -> Result<Subspace> {
    let first = commutant(mats, ambient_dim)?;
    commutant(first.basis(), first.ambient_dim())
}

/// W*(S) = (S ∪ S*)″, the von Neumann algebra generated by S.
pub fn wstar(mats: &[CMat], ambient_dim: usize) -> Result<Subspace> {
    let mut with_adjoints: Vec<CMat> = mats.to_vec();
    with_adjoints.extend(mats.iter().map(|m| m.adjoint()));
    bicommutant(&with_adjoints, ambient_dim)
}

/// A commutative algebra is maximal commutative iff A′ = A.
pub fn is_maximal_commutative(a: &StarAlgebra) -> Result<bool> {
    if !a.is_commutative() {
        return Err(Error::NotCommutative(format!(
            "is_maximal_commutative: commutator defect {:.3e}",
            a.commutativity_defect()
        )));
    }
    let prime = commutant(a.basis(), a.ambient_dim())?;
    let span = Subspace::from_span(a.ambient_dim(), a.basis(), 1e-12)?;
    Ok(prime.equals(&span, 1e-8))
}

/// Check that a bicommutant-closed subspace is spanned by the spectral
/// projections of the Hermitian parts of its basis.
pub fn projections_span_check(a: &Subspace, tol: f64, seed: u64) -> Result<bool> {
    let n = a.ambient_dim();
    let closed = commutant(
        commutant(a.basis(), n)?.basis(),
        n,
    )?;
    let span = Subspace::from_span(n, a.basis(), 1e-12)?;
    if !closed.equals(&span, 1e-8) {
        return Err(Error::Precondition(
            "projections_span_check: input is not bicommutant-closed".into(),
        ));
    }
    let mut projections: Vec<CMat> = Vec::new();
    for b in a.basis() {
        let (h, k) = crate::cmat::hermitian_parts(b);
        for herm in [h, k] {
            if herm.norm() < 1e-14 {
                continue;
            }
            let res = crate::measures::resolve_normal(&herm, tol, seed)?;
            projections.extend(res.projections().iter().cloned());
        }
    }
    let proj_span = Subspace::from_span(n, &projections, 1e-10)?;
    Ok(proj_span.equals(&span, 1e-8))
}

/// x is cyclic for A iff it is separating for A′. Returns both verdicts,
/// computed by independent routes (Krylov closure rank; injectivity of
/// c ↦ c·x on the commutant).
pub fn cyclic_separating_duality(
    a: &StarAlgebra,
    x: &CVec,
    tol: f64,
) -> Result<(bool, bool)> {
    let n = a.ambient_dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "cyclic_separating_duality: vector of length {} in dimension {n}",
            x.len()
        )));
    }
    let closure = krylov_span(a.basis(), x, tol.max(1e-12));
    let cyclic = closure.len() == n;

    let prime = commutant(a.basis(), n)?;
    let d = prime.dim();
    // c ↦ c·x stacked over the commutant basis; injective iff rank d.
    let mut map = CMat::zeros(n, d);
    for (j, cb) in prime.basis().iter().enumerate() {
        map.set_column(j, &(cb * x));
    }
    let separating = eigen::rank(&map, tol.max(1e-12))? == d;
    Ok((cyclic, separating))
}

/// Flatten helper shared with tests: HS-orthonormal basis matrices of
/// the full matrix algebra M_n.
pub fn full_matrix_basis(n: usize) -> Vec<CMat> {
    let mut basis = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let mut e = CMat::zeros(n, n);
            e[(i, j)] = crate::cmat::cr(1.0);
            basis.push(e);
        }
    }
    basis
}
