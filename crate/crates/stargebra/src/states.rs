//! Positive linear functionals, variation, the GNS construction, pure
//! state classification through representation commutants, cyclic
//! decomposition of *-representations, and the Gelfand–Naimark norm.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::StarAlgebra;
use crate::cmat::{cr, require_square, trace, CMat, CVec, DEFAULT_TOL};
use crate::commutant;
use crate::eigen::hermitian_eig;
use crate::error::{Error, Result};

/// A linear functional on a matrix algebra, stored as its trace pairing:
/// φ(a) = tr(F·a). Every functional on a matrix subspace arises this way.
#[derive(Debug, Clone)]
pub struct Functional {
    coeff: CMat,
}

impl Functional {
    pub fn new(coeff: CMat) -> Result<Functional> {
        require_square(&coeff, "Functional")?;
        Ok(Functional { coeff })
    }

    pub fn coeff(&self) -> &CMat {
        &self.coeff
    }

    pub fn eval(&self, a: &CMat) -> Complex64 {
        trace(&(&self.coeff * a))
    }

    /// The vector state ψ_x(a) = ⟨a·x, x⟩, i.e. F = x·x†.
    pub fn vector_state(x: &CVec) -> Functional {
        Functional { coeff: x * x.adjoint() }
    }

    /// tr(a)/n.
    pub fn normalized_trace(n: usize) -> Functional {
        Functional {
            coeff: CMat::identity(n, n).map(|z| z / n as f64),
        }
    }

    pub fn scale(&self, s: f64) -> Functional {
        Functional { coeff: self.coeff.map(|z| z * s) }
    }

    pub fn add(&self, other: &Functional) -> Result<Functional> {
        if self.coeff.nrows() != other.coeff.nrows() {
            return Err(Error::DimensionMismatch("Functional::add".into()));
        }
        Ok(Functional { coeff: &self.coeff + &other.coeff })
    }

    /// Values on the basis of an algebra.
    pub fn basis_values(&self, algebra: &StarAlgebra) -> CVec {
        CVec::from_iterator(algebra.dim(), algebra.basis().iter().map(|b| self.eval(b)))
    }
}

/// Gram matrix of the GNS form ⟨x, y⟩_φ = φ(y*x) over the algebra basis:
/// `G[i, j] = φ(bᵢ*·bⱼ)`. Hermitian and positive semidefinite for a
/// positive functional.
pub fn gram_matrix(phi: &Functional, algebra: &StarAlgebra) -> Result<CMat> {
    if phi.coeff.nrows() != algebra.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "functional on {}×{} matrices over an algebra of ambient dimension {}",
            phi.coeff.nrows(),
            phi.coeff.ncols(),
            algebra.ambient_dim()
        )));
    }
    let k = algebra.dim();
    let mut g = CMat::zeros(k, k);
    for i in 0..k {
        let bi_adj = algebra.basis()[i].adjoint();
        for j in 0..k {
            g[(i, j)] = phi.eval(&(&bi_adj * &algebra.basis()[j]));
        }
    }
    Ok(g)
}

/// φ is positive iff its Gram matrix is positive semidefinite. The Gram
/// matrix of a functional that is not even Hermitian on the algebra is
/// reported as an error rather than a false.
pub fn is_positive(phi: &Functional, algebra: &StarAlgebra, tol: f64) -> Result<bool> {
    let g = gram_matrix(phi, algebra)?;
    let defect = crate::cmat::hermitian_defect(&g);
    if defect > tol.max(1e-12) * 100.0 * g.norm().max(1.0) {
        return Err(Error::FunctionalNotPositive(format!(
            "Gram matrix is not Hermitian (defect {defect:.3e}); φ is not Hermitian on the algebra"
        )));
    }
    let eig = hermitian_eig(&g)?;
    let top = eig.values.iter().cloned().fold(0.0f64, f64::max);
    let min = eig.values.first().copied().unwrap_or(0.0);
    Ok(min >= -tol * top.max(1.0))
}

/// Variation v(φ) = sup |φ(a)|²/φ(a*a): the largest generalized Rayleigh
/// quotient of the rank-one form against the Gram form, over the
/// non-null directions. For unital algebras this equals φ(e). v(0) = 0
/// by convention.
pub fn variation(phi: &Functional, algebra: &StarAlgebra) -> Result<f64> {
    let g = gram_matrix(phi, algebra)?;
    let w = phi.basis_values(algebra).map(|z| z.conj());
    if w.norm() == 0.0 && g.norm() == 0.0 {
        return Ok(0.0);
    }
    let eig = hermitian_eig(&g)?;
    let top = eig.values.iter().cloned().fold(0.0f64, f64::max);
    let cut = DEFAULT_TOL * top.max(1e-300);
    let coords = eig.vectors.adjoint() * &w;
    let mut v = 0.0f64;
    for (i, lambda) in eig.values.iter().enumerate() {
        if *lambda > cut {
            v += coords[i].norm_sqr() / lambda;
        }
    }
    Ok(v)
}

/// The GNS construction for a positive functional: the quotient of the
/// algebra by the isotropic left ideal of ⟨a, b⟩_φ = φ(b*a), the induced
/// *-representation, and the cyclic (reproducing) vector.
#[derive(Debug, Clone)]
pub struct GnsResult {
    pub quotient_dim: usize,
    /// Representation matrices of the algebra basis on the quotient.
    pub rep: Vec<CMat>,
    /// Cyclic vector c_φ with π(a)·c_φ = a̲ and φ(a) = ⟨π(a)c_φ, c_φ⟩.
    pub cyclic_vector: CVec,
    /// Maps algebra coordinates to quotient coordinates.
    pub quotient_map: CMat,
    /// Gram matrix `G[i,j] = φ(bᵢ*·bⱼ)`.
    pub gram: CMat,
}

pub fn gns(phi: &Functional, algebra: &StarAlgebra, tol: f64) -> Result<GnsResult> {
    if !is_positive(phi, algebra, tol)? {
        return Err(Error::FunctionalNotPositive(
            "gns requires a positive functional".into(),
        ));
    }
    let g = gram_matrix(phi, algebra)?;
    let k = algebra.dim();
    let eig = hermitian_eig(&g)?;
    let top = eig.values.iter().cloned().fold(0.0f64, f64::max);
    let cut = tol.max(1e-14) * top;
    let kept: Vec<usize> = (0..k).filter(|&i| eig.values[i] > cut).collect();
    let m = kept.len();
    if m == 0 {
        return Err(Error::Precondition(
            "gns of the zero functional is rejected (quotient is 0)".into(),
        ));
    }

    // Quotient map Q = Λ¹ᐟ²·V† restricted to the kept directions, so that
    // ⟨x, y⟩_φ = (Qy)†(Qx); pseudo-inverse Q⁺ = V·Λ⁻¹ᐟ².
    let mut q = CMat::zeros(m, k);
    let mut q_plus = CMat::zeros(k, m);
    for (row, &i) in kept.iter().enumerate() {
        let s = eig.values[i].sqrt();
        for j in 0..k {
            q[(row, j)] = eig.vectors[(j, i)].conj() * s;
            q_plus[(j, row)] = eig.vectors[(j, i)] / s;
        }
    }

    // Push the left-multiplication structure constants through the
    // quotient. Well-defined because the dropped directions form a left
    // ideal for a positive φ.
    let rep: Vec<CMat> = (0..k)
        .map(|l| &q * algebra.left_mult_matrix(l) * &q_plus)
        .collect();

    // Riesz vector: φ(a) = ⟨a̲, c⟩ forces Q†·c = conj(φ on basis); since
    // Q·Q† = Λ_kept this solves in closed form. For unital algebras it
    // coincides with the quotient image of e.
    let w = phi.basis_values(algebra).map(|z| z.conj());
    let mut c = CVec::zeros(m);
    for (row, &i) in kept.iter().enumerate() {
        let mut dot = Complex64::ZERO;
        for j in 0..k {
            dot += eig.vectors[(j, i)].conj() * w[j];
        }
        c[row] = dot / eig.values[i].sqrt();
    }

    Ok(GnsResult {
        quotient_dim: m,
        rep,
        cyclic_vector: c,
        quotient_map: q,
        gram: g,
    })
}

/// Positivity, variation, statehood, purity (via the commutant dimension
/// of the GNS representation), in one report.
#[derive(Debug, Clone, PartialEq)]
pub struct StateReport {
    pub is_positive: bool,
    pub variation: f64,
    pub is_state: bool,
    pub is_pure: bool,
    pub commutant_dim: usize,
}

pub fn classify_state(phi: &Functional, algebra: &StarAlgebra, tol: f64) -> Result<StateReport> {
    let gns_result = gns(phi, algebra, tol)?;
    let v = variation(phi, algebra)?;
    let prime = commutant::commutant(&gns_result.rep, gns_result.quotient_dim)?;
    let commutant_dim = prime.dim();
    Ok(StateReport {
        is_positive: true,
        variation: v,
        is_state: (v - 1.0).abs() <= 1e-8 * v.max(1.0),
        is_pure: commutant_dim == 1,
        commutant_dim,
    })
}

/// One cyclic summand of a representation: an orthonormal basis of an
/// invariant subspace together with a cyclic vector for it.
#[derive(Debug, Clone)]
pub struct CyclicPiece {
    pub basis: Vec<CVec>,
    pub cyclic_vector: CVec,
}

/// Split a non-degenerate *-representation into mutually orthogonal
/// cyclic invariant subspaces by greedy peeling: seed with the first
/// standard basis vector not yet exhausted, close up under the
/// representation, project out, repeat.
pub fn decompose_cyclic(rep: &[CMat], tol: f64, seed: u64) -> Result<Vec<CyclicPiece>> {
    let m = require_same_dim_local(rep)?;
    // Degenerate part: common null space of all representation matrices.
    let mut stacked = CMat::zeros(m * rep.len(), m);
    for (k, r) in rep.iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                stacked[(k * m + i, j)] = r[(i, j)];
            }
        }
    }
    let null = crate::eigen::nullspace(&stacked, tol.max(1e-12))?;
    if !null.is_empty() {
        return Err(Error::DegenerateRepresentation { null_dim: null.len() });
    }

    let mut rng = crate::random::rng(seed);
    let mut collected: Vec<CVec> = Vec::new();
    let mut pieces: Vec<CyclicPiece> = Vec::new();
    let gs_tol = tol.max(1e-12) * 100.0;

    while collected.len() < m {
        // Seed: first standard basis vector with mass outside the
        // collected span; random fallback on degeneracy.
        let mut seed_vec: Option<CVec> = None;
        for i in 0..m {
            let mut e = CVec::zeros(m);
            e[i] = cr(1.0);
            let r = project_out(&collected, &e);
            if r.norm() > 1e-6 {
                seed_vec = Some(r.map(|z| z / r.norm()));
                break;
            }
        }
        let start = seed_vec.unwrap_or_else(|| {
            let v = crate::random::complex_vector(&mut rng, m);
            let r = project_out(&collected, &v);
            r.map(|z| z / r.norm())
        });

        // Invariant closure of the seed, kept orthogonal to earlier
        // pieces (their complement is invariant for a *-closed set).
        let mut piece: Vec<CVec> = vec![start.clone()];
        loop {
            let mut grew = false;
            let current = piece.clone();
            for v in &current {
                for r in rep {
                    let mut cand = r * v;
                    for b in collected.iter().chain(piece.iter()) {
                        let coeff = b.dotc(&cand);
                        cand -= b.map(|z| z * coeff);
                    }
                    let nrm = cand.norm();
                    if nrm > gs_tol {
                        piece.push(cand.map(|z| z / nrm));
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        collected.extend(piece.iter().cloned());
        pieces.push(CyclicPiece {
            basis: piece,
            cyclic_vector: start,
        });
    }
    Ok(pieces)
}

fn require_same_dim_local(rep: &[CMat]) -> Result<usize> {
    crate::cmat::require_same_dim(rep, "decompose_cyclic")
}

fn project_out(basis: &[CVec], v: &CVec) -> CVec {
    let mut r = v.clone();
    for _ in 0..2 {
        for b in basis {
            let coeff = b.dotc(&r);
            r -= b.map(|z| z * coeff);
        }
    }
    r
}

/// Gelfand–Naimark seminorm ‖a‖ₒ = sup over states of ψ(a*a)^{1/2},
/// maximized over vector states through the top eigenvector of a*a. At
/// matrix scale it reproduces the operator norm.
pub fn gn_norm(coords: &CVec, algebra: &StarAlgebra) -> Result<f64> {
    let a = algebra.element(coords)?;
    let gram = a.adjoint() * &a;
    let eig = hermitian_eig(&gram)?;
    let n = gram.nrows();
    let x = CVec::from_column_slice(eig.vectors.column(n - 1).as_slice());
    let psi = Functional::vector_state(&x);
    let val = psi.eval(&gram).re;
    Ok(val.max(0.0).sqrt())
}

/// Membership in E(b): |ψ(b)|² = ψ(b*b) for the vector state at x,
/// equivalently x is an eigenvector of b with eigenvalue ⟨bx, x⟩.
pub fn eigen_state_check(b: &CMat, x: &CVec, tol: f64) -> Result<bool> {
    let n = require_square(b, "eigen_state_check")?;
    if x.len() != n {
        return Err(Error::DimensionMismatch("eigen_state_check: vector length".into()));
    }
    if (x.norm() - 1.0).abs() > tol.max(1e-12) * 1e3 {
        return Err(Error::Precondition(format!(
            "eigen_state_check requires a unit vector, got ‖x‖ = {}",
            x.norm()
        )));
    }
    let bx = b * x;
    let psi_b = x.dotc(&bx);
    let psi_bb = bx.norm_squared();
    let scale = crate::cmat::operator_norm(b).powi(2).max(1e-300);
    Ok((psi_bb - psi_b.norm_sqr()).abs() <= tol * scale)
}

/// ⟨u, v⟩ = v†u as a complex scalar (left-linear inner product).
pub fn inner(u: &CVec, v: &CVec) -> Complex64 {
    v.dotc(u)
}

/// φ(a) reconstructed through a GNS result: ⟨π(a)c, c⟩ with a given in
/// algebra coordinates.
pub fn gns_expectation(gns: &GnsResult, coords: &CVec) -> Result<Complex64> {
    if coords.len() != gns.rep.len() {
        return Err(Error::DimensionMismatch("gns_expectation: coordinate length".into()));
    }
    let m = gns.quotient_dim;
    let mut acc = DMatrix::zeros(m, m);
    for (c, r) in coords.iter().zip(&gns.rep) {
        acc += r.map(|z| z * *c);
    }
    let applied = acc * &gns.cyclic_vector;
    Ok(inner(&applied, &gns.cyclic_vector))
}
