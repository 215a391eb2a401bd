//! The registered property checks. The first nineteen are the
//! acceptance gate; the trailing ones are cheap extra invariants that
//! the modules promise along the way.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{self, build_algebra, group_ring, FiniteGroup};
use crate::cmat::{c, cr, identity, operator_norm, CMat, CVec};
use crate::commutant::{self, full_matrix_basis};
use crate::eigen::{hermitian_eig, normal_eig};
use crate::error::Result;
use crate::gelfand::{bochner_measure, characters, gelfand_transform};
use crate::measures::{atom_eigen_check, fuglede_check, resolve_normal, spectral_representation};
use crate::random;
use crate::spectral::{
    multiset_hausdorff, polar_factorize, rational_apply, spectral_radius_limit, spectrum,
    sqrt_series, RationalFn,
};
use crate::states::{classify_state, gns, gns_expectation, variation, Functional};
use crate::subspace::Subspace;

use super::{CheckOutcome, Meter, PropertyCheck, SuiteConfig};

pub fn registry() -> Vec<Box<dyn PropertyCheck>> {
    vec![
        Box::new(CStarIdentity),
        Box::new(SpectralRadiusFormula),
        Box::new(RationalSpectralMapping),
        Box::new(ProductSpectrumExchange),
        Box::new(SqrtSeriesVsEigen),
        Box::new(ShiraliFordPositivity),
        Box::new(PolarAndOrthSplit),
        Box::new(MonotoneInverse),
        Box::new(GelfandIsometry),
        Box::new(GnsRecovery),
        Box::new(PuritySchur),
        Box::new(SpectralTheorem),
        Box::new(Bicommutant),
        Box::new(FugledePutnam),
        Box::new(SpectralRepresentationDft),
        Box::new(CayleyTransform),
        Box::new(EvolutionGroup),
        Box::new(BochnerBijection),
        Box::new(CounterexampleRatio),
        Box::new(HermitianRealSpectra),
        Box::new(AdjointSpectrumConjugation),
        Box::new(CommutingSumSpectra),
    ]
}

/// ‖a*a‖ = ‖a‖² for the operator norm.
struct CStarIdentity;

impl PropertyCheck for CStarIdentity {
    fn name(&self) -> &'static str {
        "cstar-identity"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for i in 0..200 {
            m.case();
            let n = 2 + (i % 7);
            let a = random::complex_matrix(&mut rng, n);
            let norm = operator_norm(&a);
            let gram_norm = operator_norm(&(a.adjoint() * &a));
            m.check("C*-identity", (gram_norm - norm * norm).abs(), 1e-9 * norm * norm);
        }
        Ok(m.outcome(self.name()))
    }
}

/// |a^(2^k)|^(1/2^k) converges to max |eig|.
struct SpectralRadiusFormula;

impl PropertyCheck for SpectralRadiusFormula {
    fn name(&self) -> &'static str {
        "spectral-radius-formula"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..100 {
            m.case();
            let a = random::complex_matrix(&mut rng, 6);
            let limit = spectral_radius_limit(&a, 30)?;
            let oracle = spectrum(&a, 1e-10)?.radius();
            m.check("radius limit vs eigenvalue oracle", (limit - oracle).abs(), 1e-6 * (1.0 + oracle));
        }
        Ok(m.outcome(self.name()))
    }
}

/// Ascending coefficients of lead·Π(z − rᵢ).
fn poly_from_roots(roots: &[Complex64], lead: Complex64) -> Vec<Complex64> {
    let mut coeffs = vec![lead];
    for r in roots {
        let mut next = vec![Complex64::ZERO; coeffs.len() + 1];
        for (i, ci) in coeffs.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * r;
        }
        coeffs = next;
    }
    coeffs
}

/// sp(r(a)) = r(sp(a)) away from the poles.
struct RationalSpectralMapping;

impl PropertyCheck for RationalSpectralMapping {
    fn name(&self) -> &'static str {
        "rational-spectral-mapping"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..100 {
            m.case();
            let a = random::complex_matrix(&mut rng, 5);
            let sp = spectrum(&a, 1e-10)?;
            // Random rational function with pole clearance ≥ 0.1.
            let zeros: Vec<Complex64> = (0..2).map(|_| random::complex_gaussian(&mut rng) * 2.0).collect();
            let mut poles = Vec::new();
            while poles.is_empty() {
                let candidate = random::complex_gaussian(&mut rng) * 4.0;
                if sp.min_distance_to(candidate) >= 0.1 {
                    poles.push(candidate);
                }
            }
            let gamma = random::complex_gaussian(&mut rng);
            let r = RationalFn::new(
                poly_from_roots(&zeros, gamma),
                poly_from_roots(&poles, cr(1.0)),
            )?;
            let ra = rational_apply(&a, &r, 1e-8)?;
            let mapped: Vec<Complex64> = sp.eigenvalues.iter().map(|l| r.eval(*l)).collect();
            let got = spectrum(&ra, 1e-10)?.eigenvalues;
            m.check("multiset Hausdorff", multiset_hausdorff(&got, &mapped), 1e-6);
        }
        Ok(m.outcome(self.name()))
    }
}

/// sp(ab)∖{0} = sp(ba)∖{0}.
struct ProductSpectrumExchange;

impl PropertyCheck for ProductSpectrumExchange {
    fn name(&self) -> &'static str {
        "product-spectrum-exchange"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..100 {
            m.case();
            let a = random::complex_matrix(&mut rng, 5);
            let b = random::complex_matrix(&mut rng, 5);
            let sp_ab = spectrum(&(&a * &b), 1e-10)?.eigenvalues;
            let sp_ba = spectrum(&(&b * &a), 1e-10)?.eigenvalues;
            m.check("sp(ab) vs sp(ba)", multiset_hausdorff(&sp_ab, &sp_ba), 1e-8);
        }
        Ok(m.outcome(self.name()))
    }
}

/// The binomial square-root series against the eigendecomposition root.
struct SqrtSeriesVsEigen;

impl PropertyCheck for SqrtSeriesVsEigen {
    fn name(&self) -> &'static str {
        "sqrt-series-vs-eigen"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..100 {
            m.case();
            let h = random::hermitian(&mut rng, 5);
            let radius = spectrum(&h, 1e-10)?.radius();
            let a = h.map(|z| z * (0.9 / radius.max(1e-9)));
            let b = sqrt_series(&a)?;
            let eig = hermitian_eig(&a)?;
            let oracle = eig.apply(|l| cr((1.0 + l).sqrt() - 1.0));
            m.check("series vs eigendecomposition", (&b - oracle).norm(), 1e-8);
            m.check("Hermitian result", crate::cmat::hermitian_defect(&b), 1e-10);
        }
        Ok(m.outcome(self.name()))
    }
}

/// a*a is positive for every a.
struct ShiraliFordPositivity;

impl PropertyCheck for ShiraliFordPositivity {
    fn name(&self) -> &'static str {
        "shirali-ford-positivity"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for i in 0..200 {
            m.case();
            let n = 2 + (i % 7);
            let a = random::complex_matrix(&mut rng, n);
            let gram = a.adjoint() * &a;
            let min_eig = hermitian_eig(&gram)?.values[0];
            let norm2 = operator_norm(&a).powi(2);
            m.check("min eig(a*a)", (-min_eig).max(0.0), 1e-10 * norm2);
        }
        Ok(m.outcome(self.name()))
    }
}

/// Polar factorisation and the orthogonal decomposition.
struct PolarAndOrthSplit;

impl PropertyCheck for PolarAndOrthSplit {
    fn name(&self) -> &'static str {
        "polar-and-orth-split"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..100 {
            m.case();
            let a = random::invertible(&mut rng, 5, 0.15);
            let (u, p) = polar_factorize(&a, 1e-12)?;
            m.check("a = u·|a|", ((&u * &p) - &a).norm(), 1e-8 * a.norm());
            m.check("u unitary", (u.adjoint() * &u - identity(5)).norm(), 1e-10);

            let h = random::hermitian(&mut rng, 5);
            let (plus, minus) = crate::spectral::orth_decompose(&h, 1e-10)?;
            let scale = operator_norm(&h);
            m.check("a₊·a₋ = 0", (&plus * &minus).norm(), 1e-9 * scale * scale);
            m.check("a = a₊ − a₋", (&plus - &minus - &h).norm(), 1e-9 * scale.max(1.0));
        }
        Ok(m.outcome(self.name()))
    }
}

/// 0 ≤ a ≤ b with a invertible forces 0 ≤ b⁻¹ ≤ a⁻¹.
struct MonotoneInverse;

impl PropertyCheck for MonotoneInverse {
    fn name(&self) -> &'static str {
        "monotone-inverse"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..100 {
            m.case();
            let n = 4;
            let a = random::positive(&mut rng, n) + identity(n).map(|z| z * 0.3);
            let b = &a + random::positive(&mut rng, n);
            let a_inv = hermitian_eig(&a)?.apply(|l| cr(1.0 / l));
            let b_inv = hermitian_eig(&b)?.apply(|l| cr(1.0 / l));
            let diff = &a_inv - &b_inv;
            let min_eig = hermitian_eig(&diff)?.values[0];
            m.check("min eig(a⁻¹ − b⁻¹)", (-min_eig).max(0.0), 1e-8);
        }
        Ok(m.outcome(self.name()))
    }
}

/// Character count, Gelfand isometry, and multiplicativity on random
/// commutative algebras.
struct GelfandIsometry;

impl PropertyCheck for GelfandIsometry {
    fn name(&self) -> &'static str {
        "gelfand-isometry"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for i in 0..50 {
            m.case();
            let n = 3 + (i % 3);
            let gen = random::normal(&mut rng, n);
            let alg = build_algebra(&[gen], n, 1e-10)?;
            let chars = characters(&alg, cfg.seed_for(self.name()) ^ i as u64)?;
            m.check(
                "character count = dimension",
                (chars.len() as f64 - alg.dim() as f64).abs(),
                0.0,
            );
            // Unit-norm random elements of the algebra.
            let mut coords = random::complex_vector(&mut rng, alg.dim());
            let elem = alg.element(&coords)?;
            let norm = operator_norm(&elem);
            coords = coords.map(|z| z / norm);
            let elem = alg.element(&coords)?;
            let hat = gelfand_transform(&coords, &chars)?;
            let sup = hat.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            m.check(
                "|â|∞ = ‖a‖",
                (sup - operator_norm(&elem)).abs(),
                1e-9 * operator_norm(&elem),
            );
            // Multiplicativity of the transform.
            let coords2 = {
                let raw = random::complex_vector(&mut rng, alg.dim());
                let e2 = alg.element(&raw)?;
                let nrm = operator_norm(&e2);
                raw.map(|z| z / nrm)
            };
            let elem2 = alg.element(&coords2)?;
            let prod_coords = alg.coords(&(&elem * &elem2))?;
            let hat2 = gelfand_transform(&coords2, &chars)?;
            let hat_prod = gelfand_transform(&prod_coords, &chars)?;
            let mult_residual = (0..chars.len())
                .map(|t| (hat_prod[t] - hat[t] * hat2[t]).norm())
                .fold(0.0f64, f64::max);
            m.check("transform multiplicativity", mult_residual, 1e-8);
        }
        Ok(m.outcome(self.name()))
    }
}

fn random_positive_functional(rng: &mut impl rand::Rng, n: usize) -> Functional {
    let mut f = CMat::zeros(n, n);
    for _ in 0..n {
        let x = random::complex_vector(rng, n);
        let w = rng.random::<f64>() + 0.1;
        f += (&x * x.adjoint()).map(|z| z * w);
    }
    Functional::new(f).expect("finite by construction")
}

/// GNS coefficient recovery and the variation identities.
struct GnsRecovery;

impl PropertyCheck for GnsRecovery {
    fn name(&self) -> &'static str {
        "gns-recovery"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for i in 0..100 {
            m.case();
            let n = 2 + (i % 3);
            let gen = random::complex_matrix(&mut rng, n);
            let alg = build_algebra(&[gen], n, 1e-10)?;
            let phi = random_positive_functional(&mut rng, n);
            let scale = phi.coeff().norm().max(1.0);
            let g = gns(&phi, &alg, 1e-10)?;
            let mut recovery = 0.0f64;
            for l in 0..alg.dim() {
                let mut coords = CVec::zeros(alg.dim());
                coords[l] = cr(1.0);
                let lhs = gns_expectation(&g, &coords)?;
                recovery = recovery.max((lhs - phi.eval(&alg.basis()[l])).norm());
            }
            m.check("φ(a) = ⟨π(a)c, c⟩", recovery, 1e-8 * scale);
            let v = variation(&phi, &alg)?;
            m.check(
                "v(φ) = ‖c‖²",
                (v - g.cyclic_vector.norm_squared()).abs() / v.max(1.0),
                1e-8,
            );
            let at_e = phi.eval(&identity(n)).re;
            m.check("v(φ) = φ(e)", (v - at_e).abs() / v.max(1.0), 1e-9);
        }
        Ok(m.outcome(self.name()))
    }
}

/// Vector states are pure; tracial states are not.
struct PuritySchur;

impl PropertyCheck for PuritySchur {
    fn name(&self) -> &'static str {
        "purity-schur"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for n in 2..=5usize {
            m.case();
            let alg = build_algebra(&full_matrix_basis(n), n, 1e-10)?;
            let x = random::unit_vector(&mut rng, n);
            let report = classify_state(&Functional::vector_state(&x), &alg, 1e-10)?;
            m.require("vector state pure", report.is_pure && report.commutant_dim == 1);
            m.require("vector state is a state", report.is_state);
        }
        for n in 2..=3usize {
            m.case();
            let alg = build_algebra(&full_matrix_basis(n), n, 1e-10)?;
            let report = classify_state(&Functional::normalized_trace(n), &alg, 1e-10)?;
            m.require(
                "tracial state not pure, commutant dim n²",
                !report.is_pure && report.commutant_dim == n * n,
            );
        }
        Ok(m.outcome(self.name()))
    }
}

/// Reconstruction, projection algebra, and the atom ⇔ eigenvalue
/// correspondence for resolutions of normal matrices.
struct SpectralTheorem;

impl PropertyCheck for SpectralTheorem {
    fn name(&self) -> &'static str {
        "spectral-theorem"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for i in 0..100 {
            m.case();
            let n = 4 + (i % 3);
            // Every third case has a repeated eigenvalue to exercise
            // multi-dimensional atoms.
            let mut eigs: Vec<Complex64> = (0..n).map(|_| random::complex_gaussian(&mut rng)).collect();
            if i % 3 == 0 {
                eigs[1] = eigs[0];
            }
            let b = random::normal_with_eigenvalues(&mut rng, &eigs);
            let res = resolve_normal(&b, 1e-8, cfg.seed_for(self.name()) ^ i as u64)?;
            let recon = crate::measures::pi_p(&res, |z| z)?;
            m.check("b = Σ λᵢPᵢ", (recon - &b).norm(), 1e-8 * b.norm());

            // Projection algebra on random label subsets.
            let k = res.points().len();
            let omega1: Vec<bool> = (0..k).map(|_| rng.random::<bool>()).collect();
            let omega2: Vec<bool> = (0..k).map(|_| rng.random::<bool>()).collect();
            let assemble = |omega: &[bool]| {
                let mut acc = CMat::zeros(n, n);
                for j in 0..k {
                    if omega[j] {
                        acc += &res.projections()[j];
                    }
                }
                acc
            };
            let both: Vec<bool> = (0..k).map(|j| omega1[j] && omega2[j]).collect();
            m.check(
                "P(ω₁∩ω₂) = P(ω₁)P(ω₂)",
                (assemble(&both) - assemble(&omega1) * assemble(&omega2)).norm(),
                1e-10,
            );

            // Atoms: every generating eigenvalue is an atom whose
            // eigenspace dimension is its multiplicity.
            let lambda = eigs[0];
            let multiplicity = eigs.iter().filter(|z| (*z - lambda).norm() < 1e-12).count();
            let (is_atom, space) = atom_eigen_check(&res, lambda, 1e-6)?;
            m.require("eigenvalue is an atom", is_atom);
            m.check(
                "eigenspace dimension = multiplicity",
                (space.len() as f64 - multiplicity as f64).abs(),
                0.0,
            );
            let mut eigen_residual = 0.0f64;
            for v in &space {
                eigen_residual = eigen_residual.max(((&b * v) - v.map(|z| z * lambda)).norm());
            }
            m.check("b·v = λ·v on the atom range", eigen_residual, 1e-7 * b.norm().max(1.0));
            let (far_atom, _) = atom_eigen_check(&res, lambda + cr(5.0) + c(0.0, 5.0), 1e-6)?;
            m.require("far point is not an atom", !far_atom);
        }
        Ok(m.outcome(self.name()))
    }
}

/// A″ = span(A) for generated *-algebras; B(H)′ = ℂ1.
struct Bicommutant;

impl PropertyCheck for Bicommutant {
    fn name(&self) -> &'static str {
        "bicommutant"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for i in 0..50 {
            m.case();
            let n = 2 + (i % 2);
            let gen = random::complex_matrix(&mut rng, n);
            let alg = build_algebra(&[gen], n, 1e-10)?;
            let double = commutant::bicommutant(alg.basis(), n)?;
            let span = Subspace::from_span(n, alg.basis(), 1e-12)?;
            m.check(
                "dim A″ = dim A",
                (double.dim() as f64 - span.dim() as f64).abs(),
                0.0,
            );
            let sine = double
                .max_principal_sine_to(&span)
                .max(span.max_principal_sine_to(&double));
            m.check("A″ = span(A), principal sine", sine, 1e-10);
        }
        for n in 2..=3usize {
            m.case();
            let prime = commutant::commutant(&full_matrix_basis(n), n)?;
            m.check(
                "M_n commutant is the scalars",
                (prime.dim() as f64 - 1.0).abs(),
                0.0,
            );
            m.require("contains identity", prime.contains(&identity(n), 1e-9));
        }
        Ok(m.outcome(self.name()))
    }
}

/// Intertwiners of normal pairs intertwine the adjoints.
struct FugledePutnam;

impl PropertyCheck for FugledePutnam {
    fn name(&self) -> &'static str {
        "fuglede-putnam"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        let n = 4;
        for _ in 0..50 {
            m.case();
            // Normal pair with three shared eigenvalues.
            let shared: Vec<Complex64> = (0..3).map(|_| random::complex_gaussian(&mut rng)).collect();
            let mut e1 = shared.clone();
            e1.push(random::complex_gaussian(&mut rng) + cr(5.0));
            let mut e2 = shared;
            e2.push(random::complex_gaussian(&mut rng) - cr(5.0));
            let n1 = random::normal_with_eigenvalues(&mut rng, &e1);
            let n2 = random::normal_with_eigenvalues(&mut rng, &e2);
            // Sylvester nullspace of a ↦ a·n₁ − n₂·a.
            let mut op = CMat::zeros(n * n, n * n);
            for col in 0..n {
                for row in 0..n {
                    for k in 0..n {
                        op[(col * n + row, k * n + row)] += n1[(k, col)];
                        op[(col * n + row, col * n + k)] -= n2[(row, k)];
                    }
                }
            }
            let null = crate::eigen::nullspace(&op, 1e-10)?;
            let mut a = CMat::zeros(n, n);
            for v in &null {
                let w = random::complex_gaussian(&mut rng);
                a += crate::subspace::unflatten(v, n).map(|z| z * w);
            }
            let scale = operator_norm(&a) * operator_norm(&n1).max(operator_norm(&n2));
            let adjoint_residual = (&a * n1.adjoint() - n2.adjoint() * &a).norm();
            m.check("‖a·n₁* − n₂*·a‖", adjoint_residual, 1e-8 * scale.max(1.0));
            m.require("fuglede_check verdict", fuglede_check(&n1, &n2, &a, 1e-8)?);
        }
        Ok(m.outcome(self.name()))
    }
}

/// The spectral representation of ℂ[ℤ/N] at c = δ_e is the DFT.
struct SpectralRepresentationDft;

impl PropertyCheck for SpectralRepresentationDft {
    fn name(&self) -> &'static str {
        "spectral-representation-dft"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut m = Meter::new();
        for n in [2usize, 4, 8] {
            m.case();
            let group = FiniteGroup::cyclic(n)?;
            let (alg, deltas) = group_ring(&group, 1e-10)?;
            let chars = characters(&alg, cfg.seed_for(self.name()) ^ n as u64)?;
            let rep: Vec<CMat> = alg.basis().to_vec();
            let mut c0 = CVec::zeros(n);
            c0[0] = cr(1.0);
            let (mu, v, support) = spectral_representation(&rep, &c0, &chars, 1e-10, cfg.seed_for(self.name()))?;
            // Uniform probability over all N characters.
            let uniform_residual = mu
                .weights()
                .iter()
                .map(|w| (w - 1.0 / n as f64).abs())
                .fold(0.0f64, f64::max);
            m.check("μ uniform on characters", uniform_residual, 1e-10);
            // Each row of V, dephased, is the DFT row of its character.
            let coords = alg.coords(&deltas[1])?;
            let mut row_residual = 0.0f64;
            for (row, &t) in support.iter().enumerate() {
                let omega: Complex64 = coords
                    .iter()
                    .enumerate()
                    .map(|(j, x)| x * chars.value(t, j))
                    .sum();
                let phase = v[(row, 0)] / v[(row, 0)].norm();
                for col in 0..n {
                    let expected = omega.powu(col as u32) / cr((n as f64).sqrt());
                    row_residual = row_residual.max((v[(row, col)] / phase - expected).norm());
                }
            }
            m.check("V = normalized DFT up to row phase", row_residual, 1e-9);
            // Intertwining V·π(a) = M(â)·V on the whole basis.
            let mut intertwine = 0.0f64;
            for (j, b) in rep.iter().enumerate() {
                let mhat = CMat::from_fn(n, n, |r_, c_| {
                    if r_ == c_ {
                        chars.value(support[r_], j)
                    } else {
                        Complex64::ZERO
                    }
                });
                intertwine = intertwine.max(((&v * b) - (mhat * &v)).norm());
            }
            m.check("intertwining residual", intertwine, 1e-9);
        }
        Ok(m.outcome(self.name()))
    }
}

/// Cayley transform: unitarity, exclusion of 1, round trip.
struct CayleyTransform;

impl PropertyCheck for CayleyTransform {
    fn name(&self) -> &'static str {
        "cayley-transform"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for i in 0..100 {
            m.case();
            let h = random::hermitian(&mut rng, 5);
            let model = crate::evolution::SelfAdjointModel::new(h.clone(), 1e-10)?;
            let u = crate::evolution::cayley(&model)?;
            m.check("u unitary", (u.adjoint() * &u - identity(5)).norm(), 1e-10);
            let eigs = normal_eig(&u, 1e-8, cfg.seed_for(self.name()) ^ i as u64)?;
            let dist1 = eigs
                .values
                .iter()
                .map(|z| (z - cr(1.0)).norm())
                .fold(f64::MAX, f64::min);
            m.require("1 not an eigenvalue", dist1 > 1e-8);
            let back = crate::evolution::inverse_cayley(&u, 1e-10, cfg.seed_for(self.name()) ^ (i + 1000) as u64)?;
            m.check("round trip", (&back - &h).norm(), 1e-8 * (1.0 + h.norm()));
        }
        Ok(m.outcome(self.name()))
    }
}

/// U_{t+s} = U_t·U_s and the first-order generator property.
struct EvolutionGroup;

impl PropertyCheck for EvolutionGroup {
    fn name(&self) -> &'static str {
        "evolution-group"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        let a = crate::evolution::SelfAdjointModel::new(random::hermitian(&mut rng, 4), 1e-10)?;
        let prop = crate::evolution::Propagator::new(&a)?;
        for _ in 0..100 {
            m.case();
            let x = random::unit_vector(&mut rng, 4);
            let t = random::gaussian(&mut rng) * 5.0;
            let s = random::gaussian(&mut rng) * 5.0;
            let u_ts = prop.apply(t + s, &x)?;
            let composed = prop.apply(t, &prop.apply(s, &x)?)?;
            m.check("group law", (&u_ts - &composed).norm(), 1e-10);
            m.check("unitarity", (u_ts.norm() - 1.0).abs(), 1e-10);
        }
        // IVP residual is first order in h.
        let x = random::unit_vector(&mut rng, 4);
        for h in [1e-2f64, 1e-3, 1e-4] {
            m.case();
            let r_h = crate::evolution::ivp_residual(&a, &x, 0.4, h)?;
            let r_h10 = crate::evolution::ivp_residual(&a, &x, 0.4, h / 10.0)?;
            let ratio = r_h / r_h10;
            m.check("residual ratio within [9, 11]", (ratio - 10.0).abs(), 1.0);
        }
        Ok(m.outcome(self.name()))
    }
}

/// States on commutative algebras ↔ probability measures on characters.
struct BochnerBijection;

impl PropertyCheck for BochnerBijection {
    fn name(&self) -> &'static str {
        "bochner-bijection"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for i in 0..50 {
            m.case();
            // Alternate diagonal algebras and the ℤ/8 group ring.
            let (alg, n) = if i % 2 == 0 {
                let n = 2 + (i % 4);
                let d = CMat::from_fn(n, n, |r, cc| {
                    if r == cc {
                        cr(r as f64 + 1.0)
                    } else {
                        Complex64::ZERO
                    }
                });
                (build_algebra(&[d], n, 1e-10)?, n)
            } else {
                let g = FiniteGroup::cyclic(8)?;
                (group_ring(&g, 1e-10)?.0, 8)
            };
            let chars = characters(&alg, cfg.seed_for(self.name()) ^ i as u64)?;
            // Random state: convex combination of unit vector states.
            let mut f = CMat::zeros(n, n);
            let raw: Vec<f64> = (0..3).map(|_| rng.random::<f64>() + 0.1).collect();
            let total: f64 = raw.iter().sum();
            for w in &raw {
                let x = random::unit_vector(&mut rng, n);
                f += (&x * x.adjoint()).map(|z| z * (w / total));
            }
            let psi = Functional::new(f)?;
            let mu = bochner_measure(&psi, &alg, &chars, 1e-10)?;
            let min_w = mu.weights().iter().cloned().fold(0.0f64, f64::min);
            m.check("weights ≥ 0", (-min_w).max(0.0), 1e-12);
            m.check("total mass 1", (mu.total() - 1.0).abs(), 1e-12);
            let mut recon = 0.0f64;
            for j in 0..alg.dim() {
                let mut coords = CVec::zeros(alg.dim());
                coords[j] = cr(1.0);
                let hat = gelfand_transform(&coords, &chars)?;
                let integral: Complex64 = hat
                    .iter()
                    .zip(mu.weights())
                    .map(|(z, w)| z * cr(*w))
                    .sum();
                recon = recon.max((integral - psi.eval(&alg.basis()[j])).norm());
            }
            m.check("ψ(a) = ∫ â dμ", recon, 1e-9);
        }
        Ok(m.outcome(self.name()))
    }
}

/// The weighted-norm character ratio is exactly γⁿ.
struct CounterexampleRatio;

impl PropertyCheck for CounterexampleRatio {
    fn name(&self) -> &'static str {
        "counterexample-ratio"
    }

    fn run(&self, _cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut m = Meter::new();
        for n in 0..=30u32 {
            m.case();
            let ratio = algebra::counterexample_ratio(2.0, n)?;
            m.check("ratio = 2ⁿ exactly", (ratio - 2f64.powi(n as i32)).abs(), 0.0);
        }
        Ok(m.outcome(self.name()))
    }
}

/// Hermitian elements have real spectra.
struct HermitianRealSpectra;

impl PropertyCheck for HermitianRealSpectra {
    fn name(&self) -> &'static str {
        "hermitian-real-spectra"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..50 {
            m.case();
            let h = random::hermitian(&mut rng, 5);
            let sp = spectrum(&h, 1e-10)?;
            let max_imag = sp.eigenvalues.iter().map(|z| z.im.abs()).fold(0.0f64, f64::max);
            m.check("max |Im λ|", max_imag, 1e-10 * h.norm().max(1.0));
        }
        Ok(m.outcome(self.name()))
    }
}

/// sp(a*) is the conjugate multiset of sp(a).
struct AdjointSpectrumConjugation;

impl PropertyCheck for AdjointSpectrumConjugation {
    fn name(&self) -> &'static str {
        "adjoint-spectrum-conjugation"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..50 {
            m.case();
            let a = random::complex_matrix(&mut rng, 5);
            let sp_a: Vec<Complex64> = spectrum(&a, 1e-10)?
                .eigenvalues
                .iter()
                .map(|z| z.conj())
                .collect();
            let sp_adj = spectrum(&a.adjoint(), 1e-10)?.eigenvalues;
            m.check("sp(a*) = conj sp(a)", multiset_hausdorff(&sp_a, &sp_adj), 1e-8);
        }
        Ok(m.outcome(self.name()))
    }
}

/// For commuting normal pairs, sp(a + b) ⊆ sp(a) + sp(b).
struct CommutingSumSpectra;

impl PropertyCheck for CommutingSumSpectra {
    fn name(&self) -> &'static str {
        "commuting-sum-spectra"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<CheckOutcome> {
        let mut rng = random::rng(cfg.seed_for(self.name()));
        let mut m = Meter::new();
        for _ in 0..50 {
            m.case();
            let (a, b) = random::commuting_hermitian_pair(&mut rng, 5);
            let sp_sum = spectrum(&(&a + &b), 1e-10)?.eigenvalues;
            let sp_a = spectrum(&a, 1e-10)?.eigenvalues;
            let sp_b = spectrum(&b, 1e-10)?.eigenvalues;
            let sums: Vec<Complex64> = sp_a
                .iter()
                .flat_map(|x| sp_b.iter().map(move |y| x + y))
                .collect();
            // Directed containment: every eigenvalue of the sum is a sum.
            let residual = sp_sum
                .iter()
                .map(|z| sums.iter().map(|s| (z - s).norm()).fold(f64::MAX, f64::min))
                .fold(0.0f64, f64::max);
            m.check("sp(a+b) ⊆ sp(a) + sp(b)", residual, 1e-8);
        }
        Ok(m.outcome(self.name()))
    }
}

