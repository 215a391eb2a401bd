//! Finite-dimensional matrix *-algebras: generated closures, group rings
//! in their left-regular representation, unitisation, and the ℓ¹ norm
//! machinery of group algebras.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::cmat::{c, cr, hs_inner, identity, require_same_dim, CMat, CVec};
use crate::error::{Error, Result};
use crate::subspace::Subspace;

/// A *-closed unital-or-not subalgebra of the n×n matrices, carried as a
/// Hilbert–Schmidt-orthonormal basis.
#[derive(Debug, Clone)]
pub struct StarAlgebra {
    ambient_dim: usize,
    basis: Vec<CMat>,
    unital: bool,
    tol: f64,
}

impl StarAlgebra {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn span(&self) -> Subspace {
        Subspace::from_span(self.ambient_dim, &self.basis, 0.0)
            .expect("stored basis is consistent")
    }

    pub fn contains(&self, m: &CMat) -> bool {
        self.span().contains(m, self.tol.max(1e-12) * 10.0)
    }

    /// Coordinates of an element in the stored basis; errors when the
    /// matrix is not in the span.
    pub fn coords(&self, m: &CMat) -> Result<CVec> {
        let span = self.span();
        let residual = span.relative_residual(m);
        if residual > self.tol.max(1e-12) * 10.0 {
            return Err(Error::Precondition(format!(
                "element lies outside the algebra (relative residual {residual:.3e})"
            )));
        }
        Ok(span.coords(m))
    }

    pub fn element(&self, coords: &CVec) -> Result<CMat> {
        if coords.len() != self.basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "coordinate vector of length {} over a basis of size {}",
                coords.len(),
                self.basis.len()
            )));
        }
        let mut m = CMat::zeros(self.ambient_dim, self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            m += b.map(|z| z * *c);
        }
        Ok(m)
    }

    /// Coordinates of the ambient identity (requires a unital algebra).
    pub fn identity_coords(&self) -> Result<CVec> {
        if !self.unital {
            return Err(Error::Precondition("algebra is not unital".into()));
        }
        self.coords(&identity(self.ambient_dim))
    }

    /// Matrix of left multiplication by basis element l on coordinates:
    /// `L[i, j] = ⟨b_l·b_j, b_i⟩`.
    pub fn left_mult_matrix(&self, l: usize) -> CMat {
        let k = self.basis.len();
        let mut out = CMat::zeros(k, k);
        for j in 0..k {
            let prod = &self.basis[l] * &self.basis[j];
            for i in 0..k {
                out[(i, j)] = hs_inner(&prod, &self.basis[i]);
            }
        }
        out
    }

    pub fn left_regular_matrices(&self) -> Vec<CMat> {
        (0..self.basis.len()).map(|l| self.left_mult_matrix(l)).collect()
    }

    /// Largest relative residual of basis products and adjoints against
    /// the span — the closure test.
    pub fn closure_residual(&self) -> f64 {
        let span = self.span();
        let mut worst = 0.0f64;
        for b in &self.basis {
            worst = worst.max(span.relative_residual(&b.adjoint()));
        }
        for bi in &self.basis {
            for bj in &self.basis {
                worst = worst.max(span.relative_residual(&(bi * bj)));
            }
        }
        if self.unital {
            worst = worst.max(span.relative_residual(&identity(self.ambient_dim)));
        }
        worst
    }

    /// Largest commutator norm among basis pairs, relative to scale 1.
    pub fn commutativity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for bi in &self.basis {
            for bj in &self.basis {
                worst = worst.max((bi * bj - bj * bi).norm());
            }
        }
        worst
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_defect() <= self.tol.max(1e-12) * 100.0
    }

    /// Assemble an algebra from an already-orthonormal basis (used by
    /// group rings, where orthogonality is exact).
    fn from_orthonormal_basis(ambient_dim: usize, basis: Vec<CMat>, unital: bool, tol: f64) -> Self {
        StarAlgebra {
            ambient_dim,
            basis,
            unital,
            tol,
        }
    }
}

/// Smallest unital *-closed subalgebra of the n×n matrices containing
/// the generators: breadth-first closure under adjoints and pairwise
/// products with Gram–Schmidt span detection.
///
/// An empty generator list yields span{identity}.
pub fn build_algebra(generators: &[CMat], ambient_dim: usize, tol: f64) -> Result<StarAlgebra> {
    if tol <= 0.0 {
        return Err(Error::Precondition("build_algebra: tol must be positive".into()));
    }
    let n = if generators.is_empty() {
        ambient_dim
    } else {
        let n = require_same_dim(generators, "build_algebra")?;
        if ambient_dim != 0 && ambient_dim != n {
            return Err(Error::DimensionMismatch(format!(
                "build_algebra: ambient_dim {ambient_dim} but generators are {n}×{n}"
            )));
        }
        n
    };
    if n == 0 {
        return Err(Error::DimensionMismatch("build_algebra: ambient dimension 0".into()));
    }

    let mut span = Subspace::new(n);
    span.insert(&identity(n), tol);
    for g in generators {
        span.insert(g, tol);
        span.insert(&g.adjoint(), tol);
    }

    loop {
        let current: Vec<CMat> = span.basis().to_vec();
        let mut grew = false;
        for b in &current {
            grew |= span.insert(&b.adjoint(), tol);
        }
        for bi in &current {
            for bj in &current {
                grew |= span.insert(&(bi * bj), tol);
                if span.dim() == n * n {
                    grew = false;
                    break;
                }
            }
            if span.dim() == n * n {
                break;
            }
        }
        if !grew || span.dim() == n * n {
            break;
        }
    }

    Ok(StarAlgebra {
        ambient_dim: n,
        basis: span.into_basis(),
        unital: true,
        tol,
    })
}

/// Adjoin the ambient identity when it is missing; unital algebras are
/// returned unchanged. The ambient identity stands in for the abstract
/// unitisation Ã.
pub fn unitize(a: &StarAlgebra) -> StarAlgebra {
    let id = identity(a.ambient_dim);
    let span = a.span();
    if span.contains(&id, a.tol.max(1e-12) * 10.0) {
        let mut out = a.clone();
        out.unital = true;
        return out;
    }
    let mut span = span;
    span.insert(&id, a.tol);
    StarAlgebra {
        ambient_dim: a.ambient_dim,
        basis: span.into_basis(),
        unital: true,
        tol: a.tol,
    }
}

/// Construct a (possibly non-unital, possibly non-*-closed) span for
/// tests and for functionals over explicit bases. Closure is NOT
/// enforced; `closure_residual` reports the defect.
pub fn algebra_from_basis(mats: &[CMat], tol: f64) -> Result<StarAlgebra> {
    let n = require_same_dim(mats, "algebra_from_basis")?;
    let span = Subspace::from_span(n, mats, tol)?;
    let unital = span.contains(&identity(n), tol.max(1e-12) * 10.0);
    Ok(StarAlgebra {
        ambient_dim: n,
        basis: span.into_basis(),
        unital,
        tol,
    })
}

// ---------------------------------------------------------------------
// Finite groups and their group rings.
// ---------------------------------------------------------------------

/// A finite group given by its Cayley table, validated on construction.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    /// table[g][h] = g·h.
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        FiniteGroup::from_table(table)
    }

    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("Cayley table is not square over 0..n".into()));
            }
        }
        // identity: e with e·g = g·e = g for all g.
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        // inverses.
        let mut inverses = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses[g] = h,
                None => {
                    return Err(Error::InvalidGroup(format!("element {g} has no inverse")));
                }
            }
        }
        // associativity.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    /// Left-regular permutation matrix of g: δ_g e_h = e_{g·h}.
    pub fn delta_matrix(&self, g: usize) -> CMat {
        let n = self.order;
        let mut m = CMat::zeros(n, n);
        for h in 0..n {
            m[(self.mul(g, h), h)] = cr(1.0);
        }
        m
    }

    /// Matrix of Σ a(g)·δ_g.
    pub fn element_matrix(&self, coeffs: &[Complex64]) -> Result<CMat> {
        if coeffs.len() != self.order {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector length {} over a group of order {}",
                coeffs.len(),
                self.order
            )));
        }
        let mut m = CMat::zeros(self.order, self.order);
        for (g, a) in coeffs.iter().enumerate() {
            if *a != Complex64::ZERO {
                m += self.delta_matrix(g).map(|z| z * *a);
            }
        }
        Ok(m)
    }

    /// Convolution (a∗b)(k) = Σ_{g·h = k} a(g)·b(h).
    pub fn convolve(&self, a: &[Complex64], b: &[Complex64]) -> Result<Vec<Complex64>> {
        if a.len() != self.order || b.len() != self.order {
            return Err(Error::DimensionMismatch("convolve: coefficient lengths".into()));
        }
        let mut out = vec![Complex64::ZERO; self.order];
        for g in 0..self.order {
            for h in 0..self.order {
                out[self.mul(g, h)] += a[g] * b[h];
            }
        }
        Ok(out)
    }

    /// Involution on coefficients: a*(g) = conj(a(g⁻¹)).
    pub fn involution(&self, a: &[Complex64]) -> Result<Vec<Complex64>> {
        if a.len() != self.order {
            return Err(Error::DimensionMismatch("involution: coefficient length".into()));
        }
        Ok((0..self.order).map(|g| a[self.inv(g)].conj()).collect())
    }
}

/// The group ring ℂ\[G\] in its left-regular representation: the algebra
/// spanned by the permutation matrices δ_g, together with the embedding
/// g ↦ δ_g. The δ_g are exactly Hilbert–Schmidt orthogonal.
pub fn group_ring(group: &FiniteGroup, tol: f64) -> Result<(StarAlgebra, Vec<CMat>)> {
    let n = group.order();
    let scale = 1.0 / (n as f64).sqrt();
    let deltas: Vec<CMat> = (0..n).map(|g| group.delta_matrix(g)).collect();
    let basis: Vec<CMat> = deltas.iter().map(|d| d.map(|z| z * scale)).collect();
    let algebra = StarAlgebra::from_orthonormal_basis(n, basis, true, tol);
    Ok((algebra, deltas))
}

/// ℓ¹ norm Σ|a(g)| of a finitely supported coefficient map.
pub fn ell1_norm(coeffs: &[Complex64]) -> f64 {
    coeffs.iter().map(|z| z.norm()).sum()
}

/// Weighted ℓ¹ norm Σ|a(k)|·γᵏ on finitely supported ℤ-sequences.
pub fn weighted_ell1_norm(coeffs: &BTreeMap<i64, Complex64>, gamma: f64) -> f64 {
    coeffs
        .iter()
        .map(|(&k, z)| z.norm() * gamma.powi(k as i32))
        .sum()
}

/// The Hermitian character τ(a) = Σ a(k) (evaluation of the Fourier
/// series at the point 1 of the circle).
pub fn hermitian_character(coeffs: &BTreeMap<i64, Complex64>) -> Complex64 {
    coeffs.values().sum()
}

/// |τ(δ_{−n})| / ‖δ_{−n}‖_γ = γⁿ: the ratio witnessing that τ is
/// unbounded on the γ-weighted ℓ¹ algebra for γ > 1.
pub fn counterexample_ratio(gamma: f64, n: u32) -> Result<f64> {
    if gamma <= 1.0 {
        return Err(Error::Precondition(format!(
            "counterexample_ratio: gamma must exceed 1, got {gamma}"
        )));
    }
    let mut delta = BTreeMap::new();
    delta.insert(-(n as i64), c(1.0, 0.0));
    let numerator = hermitian_character(&delta).norm();
    let denominator = weighted_ell1_norm(&delta, gamma);
    Ok(numerator / denominator)
}

pub use crate::cmat::hermitian_parts;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::c;
    use crate::random;
    use proptest::prelude::*;

    fn e12() -> CMat {
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = cr(1.0);
        m
    }

    #[test]
    fn empty_generators_give_span_of_identity() {
        let a = build_algebra(&[], 2, 1e-10).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.is_unital());
        assert!(a.contains(&identity(2)));
    }

    #[test]
    fn diagonal_generator_gives_diagonal_algebra() {
        let d = CMat::from_diagonal(&CVec::from_vec(vec![cr(1.0), cr(2.0)]));
        let a = build_algebra(&[d], 2, 1e-10).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.closure_residual() < 1e-10);
    }

    #[test]
    fn matrix_unit_generates_full_m2() {
        // Closure by hand: E12, E21 = E12*, E11 = E12·E21, E22 = E21·E12.
        let a = build_algebra(&[e12()], 2, 1e-10).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.closure_residual() < 1e-10);
    }

    #[test]
    fn rebuild_from_basis_preserves_span() {
        let mut rng = random::rng(21);
        let g = random::complex_matrix(&mut rng, 3);
        let a = build_algebra(&[g], 3, 1e-10).unwrap();
        let b = build_algebra(a.basis(), 3, 1e-10).unwrap();
        assert_eq!(a.dim(), b.dim());
        let sa = Subspace::from_span(3, a.basis(), 0.0).unwrap();
        let sb = Subspace::from_span(3, b.basis(), 0.0).unwrap();
        assert!(sa.max_principal_sine_to(&sb) < 1e-10);
        assert!(sb.max_principal_sine_to(&sa) < 1e-10);
    }

    #[test]
    fn unitize_adjoins_identity_when_missing() {
        let mut e11 = CMat::zeros(2, 2);
        e11[(0, 0)] = cr(1.0);
        let a = algebra_from_basis(&[e11], 1e-10).unwrap();
        assert!(!a.is_unital());
        let b = unitize(&a);
        assert!(b.is_unital());
        assert_eq!(b.dim(), 2);
        // Already unital: unchanged.
        let full = build_algebra(&[e12()], 2, 1e-10).unwrap();
        assert_eq!(unitize(&full).dim(), 4);
        let single = build_algebra(&[], 3, 1e-10).unwrap();
        assert_eq!(unitize(&single).dim(), 1);
    }

    #[test]
    fn cyclic_group_ring_of_order_one_is_scalars() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let (a, deltas) = group_ring(&g, 1e-10).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(deltas[0], identity(1));
    }

    #[test]
    fn cyclic_shift_has_order_four() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let (_, deltas) = group_ring(&g, 1e-10).unwrap();
        let d1 = &deltas[1];
        let mut p = identity(4);
        for _ in 0..4 {
            p = &p * d1;
        }
        assert_eq!(p, identity(4));
        assert_ne!(d1 * d1, identity(4));
    }

    #[test]
    fn delta_products_and_adjoints_are_exact() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let (_, d) = group_ring(&g, 1e-10).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(&d[x] * &d[y], d[g.mul(x, y)]);
            }
            assert_eq!(d[x].adjoint(), d[g.inv(x)]);
        }
    }

    /// Cayley table of S₃ from composing permutations of three symbols.
    pub fn s3_table() -> Vec<Vec<usize>> {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| {
            let r = [p[q[0]], p[q[1]], p[q[2]]];
            perms.iter().position(|s| *s == r).unwrap()
        };
        (0..6)
            .map(|i| (0..6).map(|j| compose(&perms[i], &perms[j])).collect())
            .collect()
    }

    #[test]
    fn s3_regular_representation_has_center_of_dimension_three() {
        let g = FiniteGroup::from_table(s3_table()).unwrap();
        let (a, deltas) = group_ring(&g, 1e-10).unwrap();
        assert_eq!(a.dim(), 6);
        // Brute-force the center: coefficient vectors x with
        // (Σ x_g δ_g)·δ_h = δ_h·(Σ x_g δ_g) for all h.
        let mut rows = Vec::new();
        for h in 0..6 {
            let mut block = CMat::zeros(36, 6);
            for gidx in 0..6 {
                let comm = &deltas[gidx] * &deltas[h] - &deltas[h] * &deltas[gidx];
                for (i, z) in comm.iter().enumerate() {
                    block[(i, gidx)] = *z;
                }
            }
            rows.push(block);
        }
        let mut stacked = CMat::zeros(36 * 6, 6);
        for (bi, block) in rows.iter().enumerate() {
            for r in 0..36 {
                for cidx in 0..6 {
                    stacked[(bi * 36 + r, cidx)] = block[(r, cidx)];
                }
            }
        }
        let null = crate::eigen::nullspace(&stacked, 1e-10).unwrap();
        assert_eq!(null.len(), 3);
    }

    #[test]
    fn rejects_invalid_cayley_tables() {
        // Non-associative magma on 3 elements.
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(FiniteGroup::from_table(bad).is_err());
        // Out-of-range entry.
        let oob = vec![vec![0, 1], vec![1, 5]];
        assert!(FiniteGroup::from_table(oob).is_err());
    }

    #[test]
    fn ell1_norm_examples() {
        let delta_e = vec![cr(1.0), Complex64::ZERO];
        assert_eq!(ell1_norm(&delta_e), 1.0);
        let a = vec![cr(2.0), cr(-3.0)];
        assert_eq!(ell1_norm(&a), 5.0);
    }

    #[test]
    fn counterexample_ratio_matches_powers() {
        assert_eq!(counterexample_ratio(2.0, 5).unwrap(), 32.0);
        assert_eq!(counterexample_ratio(2.0, 0).unwrap(), 1.0);
        assert!((counterexample_ratio(1.5, 10).unwrap() - 1.5f64.powi(10)).abs() < 1e-9);
        assert!(counterexample_ratio(1.0, 3).is_err());
    }

    proptest! {
        #[test]
        fn ell1_is_submultiplicative_under_convolution(
            a in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 8),
            b in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 8),
        ) {
            let g = FiniteGroup::cyclic(8).unwrap();
            let av: Vec<Complex64> = a.iter().map(|&(re, im)| c(re, im)).collect();
            let bv: Vec<Complex64> = b.iter().map(|&(re, im)| c(re, im)).collect();
            let conv = g.convolve(&av, &bv).unwrap();
            prop_assert!(ell1_norm(&conv) <= ell1_norm(&av) * ell1_norm(&bv) + 1e-9);
        }

        #[test]
        fn convolution_matches_matrix_product(
            a in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 5),
            b in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 5),
        ) {
            let g = FiniteGroup::cyclic(5).unwrap();
            let av: Vec<Complex64> = a.iter().map(|&(re, im)| c(re, im)).collect();
            let bv: Vec<Complex64> = b.iter().map(|&(re, im)| c(re, im)).collect();
            let conv = g.convolve(&av, &bv).unwrap();
            let lhs = g.element_matrix(&conv).unwrap();
            let rhs = g.element_matrix(&av).unwrap() * g.element_matrix(&bv).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }
    }
}
