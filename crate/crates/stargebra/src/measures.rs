//! Finite resolutions of identity, the spectral integral π_P, vector
//! measures, image measures, the spectral theorems for normal matrices
//! and commutative representations, the eigenvalue–atom correspondence,
//! Fuglede–Putnam, and the multiplication-operator form of cyclic
//! representations.

use num_complex::Complex64;

use crate::cmat::{cr, identity, operator_norm, require_normal, require_square, CMat, CVec};
use crate::eigen::normal_eig;
use crate::error::{Error, Result};
use crate::gelfand::{CharacterSet, DiscreteMeasure};
use crate::subspace::krylov_span;

/// A finite resolution of identity: distinct spectral points with
/// mutually orthogonal Hermitian idempotents summing to the identity.
#[derive(Debug, Clone)]
pub struct Resolution {
    points: Vec<Complex64>,
    projections: Vec<CMat>,
    tol: f64,
}

impl Resolution {
    /// Validate the resolution axioms: Hermitian idempotents, pairwise
    /// orthogonal, summing to 1, with labels separated beyond tol.
    pub fn new(points: Vec<Complex64>, projections: Vec<CMat>, tol: f64) -> Result<Resolution> {
        if points.len() != projections.len() || points.is_empty() {
            return Err(Error::DimensionMismatch(
                "Resolution: points and projections must align and be nonempty".into(),
            ));
        }
        let n = require_square(&projections[0], "Resolution")?;
        let t = tol.max(1e-12) * 100.0;
        let mut sum = CMat::zeros(n, n);
        for p in &projections {
            require_square(p, "Resolution")?;
            if (p - p.adjoint()).norm() > t * p.norm().max(1.0) {
                return Err(Error::Precondition("Resolution: projection is not Hermitian".into()));
            }
            if ((p * p) - p).norm() > t * p.norm().max(1.0) {
                return Err(Error::Precondition("Resolution: projection is not idempotent".into()));
            }
            sum += p;
        }
        if (sum - identity(n)).norm() > t * (n as f64) {
            return Err(Error::Precondition("Resolution: projections do not sum to 1".into()));
        }
        for (i, p) in projections.iter().enumerate() {
            for q in projections.iter().skip(i + 1) {
                if (p * q).norm() > t {
                    return Err(Error::Precondition(
                        "Resolution: projections are not mutually orthogonal".into(),
                    ));
                }
            }
        }
        for (i, a) in points.iter().enumerate() {
            for b in points.iter().skip(i + 1) {
                if (a - b).norm() <= tol {
                    return Err(Error::Precondition("Resolution: labels are not distinct".into()));
                }
            }
        }
        Ok(Resolution {
            points,
            projections,
            tol,
        })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn projections(&self) -> &[CMat] {
        &self.projections
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn ambient_dim(&self) -> usize {
        self.projections[0].nrows()
    }

    /// Rank of each projection (its trace, rounded).
    pub fn ranks(&self) -> Vec<usize> {
        self.projections
            .iter()
            .map(|p| crate::cmat::trace(p).re.round().max(0.0) as usize)
            .collect()
    }
}

/// Spectral resolution of a normal matrix: eigenvalues clustered by
/// single linkage at tol·max(1, ‖b‖), labels at the weighted centroid,
/// projections from the unitary diagonalization.
pub fn resolve_normal(b: &CMat, tol: f64, seed: u64) -> Result<Resolution> {
    let n = require_square(b, "resolve_normal")?;
    require_normal(b, tol.max(1e-12) * 100.0, "resolve_normal")?;
    let eig = normal_eig(b, tol.max(1e-12) * 100.0, seed)?;
    let cluster_tol = tol.max(1e-12) * b.norm().max(1.0);

    // Single-linkage clustering of the eigenvalues.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let a = eig.values[i];
        let b = eig.values[j];
        (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap()
    });
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        let z = eig.values[idx];
        match clusters.iter_mut().find(|cl| {
            cl.iter().any(|&j| (eig.values[j] - z).norm() <= cluster_tol)
        }) {
            Some(cl) => cl.push(idx),
            None => clusters.push(vec![idx]),
        }
    }

    let mut points = Vec::with_capacity(clusters.len());
    let mut projections = Vec::with_capacity(clusters.len());
    for cl in &clusters {
        let centroid: Complex64 =
            cl.iter().map(|&j| eig.values[j]).sum::<Complex64>() / cr(cl.len() as f64);
        let mut p = CMat::zeros(n, n);
        for &j in cl {
            let col = eig.vectors.column(j);
            p += col * col.adjoint();
        }
        points.push(centroid);
        projections.push(p);
    }
    Resolution::new(points, projections, tol)
}

/// The spectral integral π_P(f) = Σ f(λᵢ)·Pᵢ — a *-homomorphism from
/// functions on the support, with ‖π_P(f)‖ = max |f| over points with
/// nonzero projection. Errors when f is undefined (non-finite) at a
/// support point.
pub fn pi_p(p: &Resolution, f: impl Fn(Complex64) -> Complex64) -> Result<CMat> {
    let n = p.ambient_dim();
    let mut out = CMat::zeros(n, n);
    for (z, proj) in p.points.iter().zip(&p.projections) {
        let w = f(*z);
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::UndefinedAtPoint(format!("{z}")));
        }
        out += proj.map(|x| x * w);
    }
    Ok(out)
}

/// The scalar measure ⟨P(·)x, x⟩ = ‖P(·)x‖² of a vector.
#[derive(Debug, Clone)]
pub struct VectorMeasure {
    weights: Vec<f64>,
}

impl VectorMeasure {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// ∫ h d⟨Px, x⟩ = Σ h(λᵢ)·wᵢ.
    pub fn integrate(&self, p: &Resolution, h: impl Fn(Complex64) -> Complex64) -> Complex64 {
        p.points
            .iter()
            .zip(&self.weights)
            .map(|(z, w)| h(*z) * cr(*w))
            .sum()
    }
}

pub fn vector_measure(p: &Resolution, x: &CVec) -> Result<VectorMeasure> {
    if x.len() != p.ambient_dim() {
        return Err(Error::DimensionMismatch("vector_measure: vector length".into()));
    }
    Ok(VectorMeasure {
        weights: p.projections.iter().map(|proj| (proj * x).norm_squared()).collect(),
    })
}

/// Image resolution f(P): projections with equal image labels merge (a
/// sum of orthogonal projections is again a projection), so that
/// π_P(g∘f) = π_{f(P)}(g) exactly.
pub fn image_resolution(p: &Resolution, f: impl Fn(Complex64) -> Complex64) -> Result<Resolution> {
    let mut labels: Vec<Complex64> = Vec::new();
    let mut projections: Vec<CMat> = Vec::new();
    let merge_tol = p.tol.max(1e-12);
    for (z, proj) in p.points.iter().zip(&p.projections) {
        let fz = f(*z);
        if !fz.re.is_finite() || !fz.im.is_finite() {
            return Err(Error::UndefinedAtPoint(format!("{z}")));
        }
        match labels.iter().position(|l| (l - fz).norm() <= merge_tol) {
            Some(i) => projections[i] += proj,
            None => {
                labels.push(fz);
                projections.push(proj.clone());
            }
        }
    }
    Resolution::new(labels, projections, p.tol)
}

/// Spectral resolution of a non-degenerate commutative *-representation:
/// one projection per character of the range, labeled by the index of
/// the matching character in `chars`. Returns the resolution (points
/// carry the character indices as real labels) with the index list.
pub fn resolve_representation(
    rep: &[CMat],
    chars: &CharacterSet,
    tol: f64,
    seed: u64,
) -> Result<(Resolution, Vec<usize>)> {
    let m = crate::cmat::require_same_dim(rep, "resolve_representation")?;
    if rep.len() != chars.value_vectors().first().map(|v| v.len()).unwrap_or(0) {
        return Err(Error::DimensionMismatch(
            "resolve_representation: representation matrices must align with the character basis values".into(),
        ));
    }
    // Commutative range required.
    for a in rep {
        for b in rep {
            if (a * b - b * a).norm() > tol.max(1e-12) * 100.0 * a.norm().max(1.0) * b.norm().max(1.0) {
                return Err(Error::NotCommutative("resolve_representation: range".into()));
            }
        }
    }
    // Jointly diagonalize the Hermitian parts of the rep matrices.
    let mut family = Vec::with_capacity(2 * rep.len());
    for r in rep {
        let (h, k) = crate::cmat::hermitian_parts(r);
        if h.norm() > 1e-14 {
            family.push(h);
        }
        if k.norm() > 1e-14 {
            family.push(k);
        }
    }
    let u = crate::eigen::joint_diagonalize(&family, tol.max(1e-12), seed)?;
    // Value pattern of every ambient coordinate.
    let diags: Vec<CVec> = rep
        .iter()
        .map(|r| {
            let d = u.adjoint() * r * &u;
            CVec::from_iterator(m, (0..m).map(|i| d[(i, i)]))
        })
        .collect();
    let k_chars = chars.len();
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); k_chars];
    for col in 0..m {
        let pattern = CVec::from_iterator(rep.len(), (0..rep.len()).map(|j| diags[j][col]));
        let sup = pattern.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        // Zero pattern: a common null coordinate — degenerate rep.
        if sup <= 1e-8 {
            return Err(Error::DegenerateRepresentation { null_dim: 1 });
        }
        let mut best: Option<(usize, f64)> = None;
        for t in 0..k_chars {
            let dist = (0..rep.len())
                .map(|j| (pattern[j] - chars.value(t, j)).norm())
                .fold(0.0f64, f64::max);
            if best.is_none_or(|(_, d)| dist < d) {
                best = Some((t, dist));
            }
        }
        let (t, dist) = best.expect("nonempty character set");
        if dist > 1e-6 {
            return Err(Error::ResidualTooLarge {
                context: "resolve_representation: coordinate pattern matches no character".into(),
                residual: dist,
                tolerance: 1e-6,
            });
        }
        assigned[t].push(col);
    }
    let mut points = Vec::new();
    let mut projections = Vec::new();
    let mut indices = Vec::new();
    for (t, cols) in assigned.iter().enumerate() {
        if cols.is_empty() {
            continue;
        }
        let mut p = CMat::zeros(m, m);
        for &col in cols {
            let c = u.column(col);
            p += c * c.adjoint();
        }
        points.push(cr(t as f64));
        projections.push(p);
        indices.push(t);
    }
    Ok((Resolution::new(points, projections, tol)?, indices))
}

/// Atom query: is λ a point of P with nonzero projection, and if so what
/// is the eigenspace (the range of that projection)? Labels further than
/// tol·scale from every stored point are not atoms.
pub fn atom_eigen_check(
    p: &Resolution,
    lambda: Complex64,
    tol: f64,
) -> Result<(bool, Vec<CVec>)> {
    let scale = p
        .points
        .iter()
        .map(|z| z.norm())
        .fold(1.0f64, f64::max);
    let t = tol.max(1e-12) * scale;
    for (z, proj) in p.points.iter().zip(&p.projections) {
        if (z - lambda).norm() <= t {
            if proj.norm() < 1e-14 {
                return Ok((false, Vec::new()));
            }
            let basis = crate::eigen::column_space(proj, 1e-8)?;
            return Ok((true, basis));
        }
    }
    Ok((false, Vec::new()))
}

/// Fuglede–Putnam–Rosenblum: an intertwiner of two normal elements also
/// intertwines their adjoints. Checks the adjoint residual after
/// verifying the intertwining precondition.
pub fn fuglede_check(n1: &CMat, n2: &CMat, a: &CMat, tol: f64) -> Result<bool> {
    require_square(n1, "fuglede_check")?;
    require_square(n2, "fuglede_check")?;
    require_normal(n1, tol.max(1e-12) * 100.0, "fuglede_check: n1")?;
    require_normal(n2, tol.max(1e-12) * 100.0, "fuglede_check: n2")?;
    let scale = operator_norm(a) * operator_norm(n1).max(operator_norm(n2)).max(1e-300);
    let forward = (a * n1 - n2 * a).norm();
    if forward > tol * scale.max(1e-300) {
        return Err(Error::Precondition(format!(
            "fuglede_check: a does not intertwine (residual {forward:.3e} over scale {scale:.3e})"
        )));
    }
    let adjoint_residual = (a * n1.adjoint() - n2.adjoint() * a).norm();
    Ok(adjoint_residual <= 10.0 * tol * scale.max(1e-300))
}

/// The spectral representation of a cyclic commutative representation:
/// μ = ⟨P(·)c, c⟩ over the characters, and the unitary V with
/// V·π(a) = M_μ(â)·V, where M_μ(â) is diagonal multiplication on the
/// support. Errors when c is not cyclic.
pub fn spectral_representation(
    rep: &[CMat],
    c: &CVec,
    chars: &CharacterSet,
    tol: f64,
    seed: u64,
) -> Result<(DiscreteMeasure, CMat, Vec<usize>)> {
    let m = crate::cmat::require_same_dim(rep, "spectral_representation")?;
    if c.len() != m {
        return Err(Error::DimensionMismatch("spectral_representation: vector length".into()));
    }
    let closure = krylov_span(rep, c, tol.max(1e-12) * 10.0);
    if closure.len() != m {
        return Err(Error::NotCyclic {
            closure_dim: closure.len(),
            ambient_dim: m,
        });
    }
    let (res, indices) = resolve_representation(rep, chars, tol, seed)?;
    let vm = vector_measure(&res, c)?;
    // Support of μ (over character indices); cyclicity forces P_τ·c ≠ 0
    // for every τ in the resolution, and Σ over support spans the space.
    let mut support = Vec::new();
    let mut weights = vec![0.0f64; chars.len()];
    for (slot, &t) in indices.iter().enumerate() {
        weights[t] = vm.weights()[slot];
        if vm.weights()[slot] > tol.max(1e-12) {
            support.push((slot, t));
        }
    }
    let rows = support.len();
    let mut v = CMat::zeros(rows, m);
    for (row, &(slot, _)) in support.iter().enumerate() {
        let pc = &res.projections()[slot] * c;
        let nrm = pc.norm();
        let e = pc.map(|z| z / nrm);
        // Row = e†: V·ξ = (⟨ξ, e_τ⟩)_τ.
        for j in 0..m {
            v[(row, j)] = e[j].conj();
        }
    }
    let measure = DiscreteMeasure::raw(weights);
    Ok((measure, v, support.iter().map(|&(_, t)| t).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, group_ring, FiniteGroup};
    use crate::cmat::c;
    use crate::gelfand::characters;
    use crate::random;
    use rand::Rng;

    fn diag(vals: &[Complex64]) -> CMat {
        CMat::from_diagonal(&CVec::from_vec(vals.to_vec()))
    }

    #[test]
    fn resolve_identity_has_one_point() {
        let r = resolve_normal(&identity(2), 1e-10, 1).unwrap();
        assert_eq!(r.points().len(), 1);
        assert!((r.points()[0] - cr(1.0)).norm() < 1e-12);
        assert!((&r.projections()[0] - identity(2)).norm() < 1e-12);
    }

    #[test]
    fn resolve_clusters_repeated_eigenvalues() {
        let b = diag(&[cr(1.0), cr(1.0), cr(2.0)]);
        let r = resolve_normal(&b, 1e-10, 2).unwrap();
        assert_eq!(r.points().len(), 2);
        assert_eq!(r.ranks().iter().sum::<usize>(), 3);
        let idx1 = r.points().iter().position(|z| (z - cr(1.0)).norm() < 1e-9).unwrap();
        assert_eq!(r.ranks()[idx1], 2);
        assert!((&r.projections()[idx1] - diag(&[cr(1.0), cr(1.0), Complex64::ZERO])).norm() < 1e-10);
    }

    #[test]
    fn resolve_random_unitary_reconstructs() {
        let mut rng = random::rng(179);
        let u = random::unitary(&mut rng, 5);
        let r = resolve_normal(&u, 1e-10, 3).unwrap();
        let recon = pi_p(&r, |z| z).unwrap();
        assert!((recon - &u).norm() < 1e-9);
        let sum: CMat = r.projections().iter().fold(CMat::zeros(5, 5), |acc, p| acc + p);
        assert!((sum - identity(5)).norm() < 1e-10);
    }

    #[test]
    fn resolve_rejects_non_normal() {
        let mut nn = CMat::zeros(2, 2);
        nn[(0, 1)] = cr(1.0);
        assert!(matches!(resolve_normal(&nn, 1e-10, 1), Err(Error::NotNormal(_))));
    }

    #[test]
    fn pi_p_examples() {
        let b = diag(&[cr(1.0), cr(2.0)]);
        let r = resolve_normal(&b, 1e-10, 4).unwrap();
        // f ≡ 1 → identity.
        let one = pi_p(&r, |_| cr(1.0)).unwrap();
        assert!((one - identity(2)).norm() < 1e-12);
        // Indicator of a point → that projection.
        let p0 = pi_p(&r, |z| if (z - r.points()[0]).norm() < 1e-9 { cr(1.0) } else { Complex64::ZERO }).unwrap();
        assert!((p0 - &r.projections()[0]).norm() < 1e-12);
        // f = id reconstructs.
        let back = pi_p(&r, |z| z).unwrap();
        assert!((back - &b).norm() < 1e-9);
        // Undefined at a support point.
        assert!(matches!(
            pi_p(&r, |z| cr(1.0) / (z - cr(1.0))),
            Err(Error::UndefinedAtPoint(_))
        ));
        // Norm identity: ‖π_P(f)‖ = max |f| on the support.
        let f = |z: Complex64| z * z - cr(0.5);
        let norm = operator_norm(&pi_p(&r, f).unwrap());
        let sup = r.points().iter().map(|z| f(*z).norm()).fold(0.0f64, f64::max);
        assert!((norm - sup).abs() < 1e-10);
    }

    #[test]
    fn vector_measure_examples() {
        let b = diag(&[cr(1.0), cr(2.0)]);
        let r = resolve_normal(&b, 1e-10, 5).unwrap();
        let zero = vector_measure(&r, &CVec::zeros(2)).unwrap();
        assert!(zero.weights().iter().all(|w| *w == 0.0));

        let e1 = CVec::from_vec(vec![cr(1.0), Complex64::ZERO]);
        let m = vector_measure(&r, &e1).unwrap();
        let idx1 = r.points().iter().position(|z| (z - cr(1.0)).norm() < 1e-9).unwrap();
        assert!((m.weights()[idx1] - 1.0).abs() < 1e-12);
        assert!((m.total() - 1.0).abs() < 1e-12);

        // Integral identity ⟨π_P(f)x, x⟩ = ∫ f dμ_x.
        let mut rng = random::rng(181);
        let x = random::complex_vector(&mut rng, 2);
        let mx = vector_measure(&r, &x).unwrap();
        assert!((mx.total() - x.norm_squared()).abs() < 1e-10 * x.norm_squared());
        let f = |z: Complex64| z * z + c(0.0, 1.0);
        let lhs = {
            let px = pi_p(&r, f).unwrap() * &x;
            x.dotc(&px)
        };
        let rhs = mx.integrate(&r, f);
        assert!((lhs - rhs).norm() < 1e-10 * x.norm_squared().max(1.0));
    }

    #[test]
    fn image_resolution_merges_labels() {
        let b = diag(&[cr(1.0), cr(-1.0)]);
        let r = resolve_normal(&b, 1e-10, 6).unwrap();
        // Identity map: unchanged.
        let same = image_resolution(&r, |z| z).unwrap();
        assert_eq!(same.points().len(), 2);
        // Constant map: single projection = identity.
        let const_r = image_resolution(&r, |_| cr(7.0)).unwrap();
        assert_eq!(const_r.points().len(), 1);
        assert!((&const_r.projections()[0] - identity(2)).norm() < 1e-12);
        // z²: both points map to 1, projections merge to identity.
        let sq = image_resolution(&r, |z| z * z).unwrap();
        assert_eq!(sq.points().len(), 1);
        assert!((sq.points()[0] - cr(1.0)).norm() < 1e-12);
        assert!((&sq.projections()[0] - identity(2)).norm() < 1e-12);
        // Change of variables: π_P(g∘f) = π_{f(P)}(g).
        let g = |z: Complex64| z * cr(3.0) + cr(1.0);
        let lhs = pi_p(&r, |z| g(z * z)).unwrap();
        let rhs = pi_p(&sq, g).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn resolve_representation_of_diagonal_algebra() {
        let d = diag(&[cr(1.0), cr(2.0)]);
        let a = build_algebra(&[d], 2, 1e-10).unwrap();
        let chars = characters(&a, 7).unwrap();
        let rep: Vec<CMat> = a.basis().to_vec();
        let (res, indices) = resolve_representation(&rep, &chars, 1e-10, 8).unwrap();
        assert_eq!(res.points().len(), 2);
        assert_eq!(indices.len(), 2);
        // π(a) = Σ τ(a)·P_τ on each basis element.
        for (j, b) in rep.iter().enumerate() {
            let mut recon = CMat::zeros(2, 2);
            for (slot, &t) in indices.iter().enumerate() {
                recon += res.projections()[slot].map(|z| z * chars.value(t, j));
            }
            assert!((recon - b).norm() < 1e-9);
        }
    }

    #[test]
    fn resolve_representation_matches_resolve_normal() {
        let mut rng = random::rng(191);
        let b = random::normal(&mut rng, 4);
        let a = build_algebra(std::slice::from_ref(&b), 4, 1e-10).unwrap();
        let chars = characters(&a, 9).unwrap();
        let rep: Vec<CMat> = a.basis().to_vec();
        let (res, indices) = resolve_representation(&rep, &chars, 1e-10, 10).unwrap();
        let direct = resolve_normal(&b, 1e-10, 11).unwrap();
        assert_eq!(res.points().len(), direct.points().len());
        // Match projections through the eigenvalue â ↔ λ relabeling.
        let coords = a.coords(&b).unwrap();
        for (slot, &t) in indices.iter().enumerate() {
            let tau_b: Complex64 = coords
                .iter()
                .enumerate()
                .map(|(j, x)| x * chars.value(t, j))
                .sum();
            let k = direct
                .points()
                .iter()
                .position(|z| (z - tau_b).norm() < 1e-7)
                .expect("character value must be an eigenvalue");
            assert!((&res.projections()[slot] - &direct.projections()[k]).norm() < 1e-7);
        }
    }

    #[test]
    fn resolve_representation_of_cyclic_group_ring() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let (a, _) = group_ring(&g, 1e-10).unwrap();
        let chars = characters(&a, 12).unwrap();
        let rep: Vec<CMat> = a.basis().to_vec();
        let (res, _) = resolve_representation(&rep, &chars, 1e-10, 13).unwrap();
        assert_eq!(res.points().len(), 4);
        assert!(res.ranks().iter().all(|&r| r == 1));
    }

    #[test]
    fn atom_checks() {
        let b = diag(&[cr(1.0), cr(2.0)]);
        let r = resolve_normal(&b, 1e-10, 14).unwrap();
        let (is_atom, space) = atom_eigen_check(&r, cr(1.0), 1e-8).unwrap();
        assert!(is_atom);
        assert_eq!(space.len(), 1);
        let v = &space[0];
        assert!(((&b * v) - v.map(|z| z * cr(1.0))).norm() < 1e-10);

        let (not_atom, empty) = atom_eigen_check(&r, cr(3.0), 1e-8).unwrap();
        assert!(!not_atom);
        assert!(empty.is_empty());

        // Double eigenvalue → eigenspace dimension 2.
        let mut rng = random::rng(193);
        let u = random::unitary(&mut rng, 3);
        let h = &u * diag(&[cr(5.0), cr(5.0), cr(-1.0)]) * u.adjoint();
        let r = resolve_normal(&h, 1e-10, 15).unwrap();
        let (is_atom, space) = atom_eigen_check(&r, cr(5.0), 1e-8).unwrap();
        assert!(is_atom);
        assert_eq!(space.len(), 2);
        for v in &space {
            assert!(((&h * v) - v.map(|z| z * cr(5.0))).norm() < 1e-9);
        }
    }

    #[test]
    fn fuglede_examples() {
        let mut rng = random::rng(197);
        let nm = random::normal(&mut rng, 3);
        assert!(fuglede_check(&nm, &nm, &identity(3), 1e-10).unwrap());

        let d = diag(&[cr(1.0), cr(2.0)]);
        let a = diag(&[c(3.0, 1.0), c(-2.0, 0.5)]);
        assert!(fuglede_check(&d, &d, &a, 1e-10).unwrap());

        // Non-intertwiner is rejected.
        let n1 = diag(&[cr(1.0), cr(2.0)]);
        let n2 = diag(&[cr(3.0), cr(4.0)]);
        assert!(matches!(
            fuglede_check(&n1, &n2, &identity(2), 1e-10),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fuglede_on_constructed_intertwiners() {
        // n₁, n₂ normal with coupled spectra; a from the Sylvester
        // nullspace of x ↦ a·n₁ − n₂·a.
        let mut rng = random::rng(199);
        for _ in 0..5 {
            let shared = vec![cr(1.0), c(0.0, 2.0), c(-1.0, 1.0)];
            let extra1 = c(4.0, 0.0);
            let extra2 = c(0.0, -3.0);
            let mut e1 = shared.clone();
            e1.push(extra1);
            let mut e2 = shared.clone();
            e2.push(extra2);
            let n1 = random::normal_with_eigenvalues(&mut rng, &e1);
            let n2 = random::normal_with_eigenvalues(&mut rng, &e2);
            // Stack the Sylvester operator vec(a·n₁ − n₂·a).
            let n = 4;
            let mut op = CMat::zeros(n * n, n * n);
            // vec(a·n₁) = (n₁ᵀ ⊗ I)vec(a); vec(n₂·a) = (I ⊗ n₂)vec(a).
            for col in 0..n {
                for row in 0..n {
                    for k in 0..n {
                        op[(col * n + row, k * n + row)] += n1[(k, col)];
                        op[(col * n + row, col * n + k)] -= n2[(row, k)];
                    }
                }
            }
            let null = crate::eigen::nullspace(&op, 1e-10).unwrap();
            assert!(!null.is_empty());
            // Random combination of nullspace vectors.
            let mut a = CMat::zeros(n, n);
            for v in &null {
                let w = random::complex_gaussian(&mut rng);
                a += crate::subspace::unflatten(v, n).map(|z| z * w);
            }
            assert!(fuglede_check(&n1, &n2, &a, 1e-8).unwrap());
        }
    }

    #[test]
    fn spectral_representation_one_dimensional() {
        let a = build_algebra(&[], 1, 1e-10).unwrap();
        let chars = characters(&a, 16).unwrap();
        let rep: Vec<CMat> = a.basis().to_vec();
        let c0 = CVec::from_vec(vec![cr(1.0)]);
        let (mu, v, _) = spectral_representation(&rep, &c0, &chars, 1e-10, 17).unwrap();
        assert_eq!(mu.weights().len(), 1);
        assert!((mu.weights()[0] - 1.0).abs() < 1e-12);
        assert_eq!(v.nrows(), 1);
        assert!((v[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_representation_of_diagonal_algebra() {
        let d = diag(&[cr(1.0), cr(2.0)]);
        let a = build_algebra(&[d], 2, 1e-10).unwrap();
        let chars = characters(&a, 18).unwrap();
        let rep: Vec<CMat> = a.basis().to_vec();
        let cvec = CVec::from_vec(vec![cr(1.0 / 2f64.sqrt()), cr(1.0 / 2f64.sqrt())]);
        let (mu, v, support) = spectral_representation(&rep, &cvec, &chars, 1e-10, 19).unwrap();
        assert_eq!(support.len(), 2);
        for &t in &support {
            assert!((mu.weights()[t] - 0.5).abs() < 1e-10);
        }
        // V is unitary and intertwines.
        assert!((v.adjoint() * &v - identity(2)).norm() < 1e-10);
        for (j, b) in rep.iter().enumerate() {
            let mhat = CMat::from_fn(2, 2, |r_, c_| {
                if r_ == c_ {
                    chars.value(support[r_], j)
                } else {
                    Complex64::ZERO
                }
            });
            assert!(((&v * b) - (mhat * &v)).norm() < 1e-9);
        }
        // e₁ is not cyclic for the diagonal algebra.
        let e1 = CVec::from_vec(vec![cr(1.0), Complex64::ZERO]);
        assert!(matches!(
            spectral_representation(&rep, &e1, &chars, 1e-10, 20),
            Err(Error::NotCyclic { .. })
        ));
    }

    #[test]
    fn spectral_representation_of_group_ring_is_dft() {
        let n = 4;
        let g = FiniteGroup::cyclic(n).unwrap();
        let (a, deltas) = group_ring(&g, 1e-10).unwrap();
        let chars = characters(&a, 21).unwrap();
        let rep: Vec<CMat> = a.basis().to_vec();
        let mut c0 = CVec::zeros(n);
        c0[0] = cr(1.0);
        let (mu, v, support) = spectral_representation(&rep, &c0, &chars, 1e-10, 22).unwrap();
        // Uniform measure over the four characters.
        assert_eq!(support.len(), n);
        for w in mu.weights() {
            assert!((w - 0.25).abs() < 1e-10);
        }
        // V equals the normalized DFT up to a per-row phase: each row,
        // times a phase making its first entry real positive, is a DFT row.
        let coords = a.coords(&deltas[1]).unwrap();
        for row in 0..n {
            let t = support[row];
            // Character value on δ₁ determines the DFT frequency.
            let tau_delta1: Complex64 = coords
                .iter()
                .enumerate()
                .map(|(j, x)| x * chars.value(t, j))
                .sum();
            let phase = v[(row, 0)] / v[(row, 0)].norm();
            for col in 0..n {
                let expected = tau_delta1.powu(col as u32) / cr((n as f64).sqrt());
                let got = v[(row, col)] / phase;
                assert!(
                    (got - expected).norm() < 1e-9,
                    "row {row} col {col}: {got} vs {expected}"
                );
            }
        }
        // Intertwining: V·π(a) = M(â)·V.
        for (j, b) in rep.iter().enumerate() {
            let mhat = CMat::from_fn(n, n, |r_, c_| {
                if r_ == c_ {
                    chars.value(support[r_], j)
                } else {
                    Complex64::ZERO
                }
            });
            assert!(((&v * b) - (mhat * &v)).norm() < 1e-9);
            // Multiplication-operator norm identity: ‖π(a)‖ is the sup of
            // |â| over the support of μ.
            let sup = support
                .iter()
                .map(|&t| chars.value(t, j).norm())
                .fold(0.0f64, f64::max);
            assert!((operator_norm(b) - sup).abs() < 1e-9 * sup.max(1.0));
        }
    }

    #[test]
    fn multiplicativity_of_spectral_measure_on_subsets() {
        let mut rng = random::rng(211);
        let b = random::normal(&mut rng, 5);
        let r = resolve_normal(&b, 1e-10, 23).unwrap();
        let k = r.points().len();
        // Random label subsets ω₁, ω₂.
        let omega1: Vec<bool> = (0..k).map(|_| rng.random::<bool>()).collect();
        let omega2: Vec<bool> = (0..k).map(|_| rng.random::<bool>()).collect();
        let p = |omega: &[bool]| {
            let mut acc = CMat::zeros(5, 5);
            for i in 0..k {
                if omega[i] {
                    acc += &r.projections()[i];
                }
            }
            acc
        };
        let both: Vec<bool> = (0..k).map(|i| omega1[i] && omega2[i]).collect();
        let lhs = p(&both);
        let rhs = p(&omega1) * p(&omega2);
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn pi_p_positivity_iff_nonnegative_symbol() {
        let mut rng = random::rng(227);
        let h = random::hermitian(&mut rng, 4);
        let r = resolve_normal(&h, 1e-10, 25).unwrap();
        // f ≥ 0 on the support ⇒ π_P(f) positive.
        let pos = pi_p(&r, |z| cr(z.re * z.re + 0.1)).unwrap();
        assert!(crate::eigen::hermitian_eig(&pos).unwrap().values[0] > 0.0);
        // f negative somewhere on the support ⇒ π_P(f) not positive.
        let lowest = r.points().iter().map(|z| z.re).fold(f64::MAX, f64::min);
        let neg = pi_p(&r, |z| cr(z.re - lowest - 0.5)).unwrap();
        assert!(crate::eigen::hermitian_eig(&neg).unwrap().values[0] < 0.0);
    }

    #[test]
    fn hermitian_idempotents_in_the_range_are_indicators() {
        let b = diag(&[cr(1.0), cr(2.0), cr(5.0)]);
        let r = resolve_normal(&b, 1e-10, 26).unwrap();
        // Indicator symbols give projections.
        let f = |z: Complex64| if z.re > 1.5 { cr(1.0) } else { Complex64::ZERO };
        let p = pi_p(&r, f).unwrap();
        assert!(((&p * &p) - &p).norm() < 1e-12);
        assert!((&p - p.adjoint()).norm() < 1e-12);
        // A non-{0,1} symbol value breaks idempotence.
        let q = pi_p(&r, |z| if z.re > 1.5 { cr(0.5) } else { Complex64::ZERO }).unwrap();
        assert!(((&q * &q) - &q).norm() > 1e-2);
        // Conversely, a Hermitian idempotent in the range determines an
        // indicator: its symbol values are the eigenvalues on the atoms.
        for (slot, point) in r.points().iter().enumerate() {
            let val = f(*point);
            let projected = &p * &r.projections()[slot];
            let expected = r.projections()[slot].map(|z| z * val);
            assert!((projected - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn monotone_convergence_at_finite_scale() {
        let b = diag(&[cr(0.0), cr(1.0), cr(3.0)]);
        let r = resolve_normal(&b, 1e-10, 24).unwrap();
        // f_n = min(f, n) increases to f = id on the support.
        let f = |z: Complex64| z;
        let mut prev: Option<CMat> = None;
        for cap in [0.5f64, 1.5, 2.5, 3.5] {
            let fn_cap = pi_p(&r, |z| cr(f(z).re.min(cap))).unwrap();
            if let Some(p) = prev {
                let diff = &fn_cap - &p;
                let min_eig = crate::eigen::hermitian_eig(&diff).unwrap().values[0];
                assert!(min_eig > -1e-12);
            }
            prev = Some(fn_cap);
        }
        let limit = pi_p(&r, f).unwrap();
        assert!((prev.unwrap() - limit).norm() < 1e-12);
    }
}
