//! Linear subspaces of the n×n matrices, carried as orthonormal bases in
//! the Hilbert–Schmidt (trace) inner product. Commutants, bicommutants
//! and algebra spans all live here.

use crate::cmat::{hs_inner, CMat, CVec};
use crate::eigen;
use crate::error::{Error, Result};

/// A subspace of matrices with an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<CMat>,
}

impl Subspace {
    pub fn new(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// Orthonormalize a spanning set; directions with relative residual
    /// below `tol` are treated as dependent and dropped.
    pub fn from_span(ambient_dim: usize, mats: &[CMat], tol: f64) -> Result<Self> {
        let mut sub = Subspace::new(ambient_dim);
        for m in mats {
            if m.nrows() != ambient_dim || m.ncols() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "subspace of {ambient_dim}×{ambient_dim} matrices given a {}×{} element",
                    m.nrows(),
                    m.ncols()
                )));
            }
            sub.insert(m, tol);
        }
        Ok(sub)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<CMat> {
        self.basis
    }

    /// Gram–Schmidt insertion with one reorthogonalization pass. Returns
    /// true when the candidate added a new direction.
    pub fn insert(&mut self, m: &CMat, tol: f64) -> bool {
        let scale = m.norm();
        if scale == 0.0 || !crate::cmat::is_finite_mat(m) {
            return false;
        }
        let mut r = m.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let coeff = hs_inner(&r, b);
                r -= b.map(|z| z * coeff);
            }
        }
        let rnorm = r.norm();
        if rnorm <= tol * scale {
            return false;
        }
        self.basis.push(r.map(|z| z / rnorm));
        true
    }

    /// Orthogonal projection of m onto the subspace.
    pub fn project(&self, m: &CMat) -> CMat {
        let mut p = CMat::zeros(self.ambient_dim, self.ambient_dim);
        for b in &self.basis {
            let coeff = hs_inner(m, b);
            p += b.map(|z| z * coeff);
        }
        p
    }

    /// ‖m − P(m)‖ / max(‖m‖, 1): relative distance from the span.
    pub fn relative_residual(&self, m: &CMat) -> f64 {
        (m - self.project(m)).norm() / m.norm().max(1.0)
    }

    pub fn contains(&self, m: &CMat, tol: f64) -> bool {
        self.relative_residual(m) <= tol
    }

    /// Coordinates of m in the stored orthonormal basis.
    pub fn coords(&self, m: &CMat) -> CVec {
        CVec::from_iterator(self.basis.len(), self.basis.iter().map(|b| hs_inner(m, b)))
    }

    /// Flatten the basis into an n²×k matrix of column vectors.
    fn basis_matrix(&self) -> CMat {
        let n2 = self.ambient_dim * self.ambient_dim;
        let mut out = CMat::zeros(n2, self.basis.len());
        for (j, b) in self.basis.iter().enumerate() {
            for (i, z) in b.iter().enumerate() {
                out[(i, j)] = *z;
            }
        }
        out
    }

    /// Sine of the largest principal angle from self to other:
    /// σ_max((I − P_other)·A) over self's orthonormal basis A. Zero iff
    /// self ⊆ other.
    pub fn max_principal_sine_to(&self, other: &Subspace) -> f64 {
        if self.basis.is_empty() {
            return 0.0;
        }
        if other.basis.is_empty() {
            return 1.0;
        }
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let m = &a - &b * (b.adjoint() * &a);
        crate::cmat::operator_norm(&m).min(1.0)
    }

    /// Symmetric span equality: equal dimensions and both largest
    /// principal sines below tol.
    pub fn equals(&self, other: &Subspace, tol: f64) -> bool {
        self.dim() == other.dim()
            && self.max_principal_sine_to(other) <= tol
            && other.max_principal_sine_to(self) <= tol
    }

    /// One-sided inclusion within tol.
    pub fn subset_of(&self, other: &Subspace, tol: f64) -> bool {
        self.max_principal_sine_to(other) <= tol
    }
}

/// Orthonormal basis (as columns) of the span of a list of vectors.
pub fn vector_span_basis(vectors: &[CVec], tol: f64) -> Result<Vec<CVec>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let n = vectors[0].len();
    let mut stacked = CMat::zeros(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        if v.len() != n {
            return Err(Error::DimensionMismatch("vector_span_basis: ragged input".into()));
        }
        stacked.set_column(j, v);
    }
    eigen::column_space(&stacked, tol)
}

/// Hilbert–Schmidt-orthonormal union of two orthonormal families, used
/// when adjoining elements to an existing span.
pub fn extend_basis(basis: &mut Vec<CMat>, extra: &[CMat], tol: f64) {
    let n = if let Some(b) = basis.first() {
        b.nrows()
    } else if let Some(e) = extra.first() {
        e.nrows()
    } else {
        return;
    };
    let mut sub = Subspace {
        ambient_dim: n,
        basis: std::mem::take(basis),
    };
    for m in extra {
        sub.insert(m, tol);
    }
    *basis = sub.basis;
}

/// Orthonormal basis of the smallest subspace containing x that is
/// invariant under every matrix in the list (the closure of the span of
/// words in the matrices applied to x, together with x itself).
pub fn krylov_span(mats: &[CMat], x: &CVec, tol: f64) -> Vec<CVec> {
    let mut basis: Vec<CVec> = Vec::new();
    let insert = |basis: &mut Vec<CVec>, v: &CVec| -> bool {
        let scale = v.norm();
        if scale == 0.0 {
            return false;
        }
        let mut r = v.clone();
        for _ in 0..2 {
            for b in basis.iter() {
                let coeff = b.dotc(&r);
                r -= b.map(|z| z * coeff);
            }
        }
        let rn = r.norm();
        if rn <= tol * scale {
            return false;
        }
        basis.push(r.map(|z| z / rn));
        true
    };
    insert(&mut basis, x);
    loop {
        let mut grew = false;
        let current = basis.clone();
        for v in &current {
            for m in mats {
                grew |= insert(&mut basis, &(m * v));
            }
        }
        if !grew {
            return basis;
        }
    }
}

/// n²-vector of a matrix in column-major order.
pub fn flatten(m: &CMat) -> CVec {
    CVec::from_iterator(m.nrows() * m.ncols(), m.iter().cloned())
}

/// Rebuild an n×n matrix from its column-major flattening.
pub fn unflatten(v: &CVec, n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| v[j * n + i])
}

/// Matrix of the linear map x ↦ s·x − x·s on column-major flattenings.
pub fn commutator_operator(s: &CMat) -> CMat {
    let n = s.nrows();
    let n2 = n * n;
    let mut op = CMat::zeros(n2, n2);
    // vec(s·x) = (I ⊗ s)·vec(x); vec(x·s) = (sᵀ ⊗ I)·vec(x).
    for col in 0..n {
        for row in 0..n {
            for k in 0..n {
                // (I ⊗ s): block diagonal copies of s.
                op[(col * n + row, col * n + k)] += s[(row, k)];
                // −(sᵀ ⊗ I).
                op[(k * n + row, col * n + row)] -= s[(col, k)];
            }
        }
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::cr;
    use crate::random;
    use num_complex::Complex64;

    #[test]
    fn insert_drops_dependent_directions() {
        let mut rng = random::rng(1);
        let a = random::complex_matrix(&mut rng, 3);
        let mut sub = Subspace::new(3);
        assert!(sub.insert(&a, 1e-10));
        assert!(!sub.insert(&a.map(|z| z * Complex64::new(2.0, 1.0)), 1e-10));
        assert_eq!(sub.dim(), 1);
    }

    #[test]
    fn span_equality_is_basis_independent() {
        let mut rng = random::rng(6);
        let a = random::complex_matrix(&mut rng, 3);
        let b = random::complex_matrix(&mut rng, 3);
        let s1 = Subspace::from_span(3, &[a.clone(), b.clone()], 1e-10).unwrap();
        let mixed = vec![
            &a + b.map(|z| z * cr(3.0)),
            &a - b.map(|z| z * Complex64::new(0.0, 1.0)),
        ];
        let s2 = Subspace::from_span(3, &mixed, 1e-10).unwrap();
        assert!(s1.equals(&s2, 1e-10));
    }

    #[test]
    fn commutator_operator_matches_direct() {
        let mut rng = random::rng(9);
        let s = random::complex_matrix(&mut rng, 4);
        let x = random::complex_matrix(&mut rng, 4);
        let lhs = unflatten(&(commutator_operator(&s) * flatten(&x)), 4);
        let rhs = &s * &x - &x * &s;
        assert!((lhs - rhs).norm() < 1e-12 * s.norm() * x.norm());
    }

    #[test]
    fn principal_sine_detects_subset() {
        let mut rng = random::rng(12);
        let a = random::complex_matrix(&mut rng, 3);
        let b = random::complex_matrix(&mut rng, 3);
        let small = Subspace::from_span(3, std::slice::from_ref(&a), 1e-10).unwrap();
        let big = Subspace::from_span(3, &[a, b], 1e-10).unwrap();
        assert!(small.subset_of(&big, 1e-10));
        assert!(!big.subset_of(&small, 1e-10));
    }
}
