//! Spectra and everything computed from them: spectral radii, the Pták
//! function, rational and continuous functional calculus, square roots,
//! polar and orthogonal decompositions, reflections, and the bounded
//! Cayley transform.

use num_complex::Complex64;

use crate::cmat::{
    c, cr, identity, is_hermitian, operator_norm, require_hermitian, require_normal,
    require_square, solve, CMat,
};
use crate::eigen::{general_eigenvalues, hermitian_eig, normal_eig};
use crate::error::{Error, Result};

/// The spectrum of a matrix: eigenvalues with algebraic multiplicity.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub tol: f64,
}

impl Spectrum {
    /// Spectral radius r_λ = max |λ|.
    pub fn radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_distance_to(&self, z: Complex64) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| (l - z).norm())
            .fold(f64::MAX, f64::min)
    }
}

/// Eigenvalues with multiplicity. Hermitian inputs (within tol) route to
/// the symmetric solver so their spectra are real by construction; for a
/// rank-deficient matrix the eigenvalue 0 appears on its own, matching
/// the unital embedding of a non-unital algebra.
pub fn spectrum(a: &CMat, tol: f64) -> Result<Spectrum> {
    require_square(a, "spectrum")?;
    let eigenvalues = if is_hermitian(a, tol.max(1e-13)) {
        hermitian_eig(a)?.values.into_iter().map(cr).collect()
    } else {
        general_eigenvalues(a)?
    };
    Ok(Spectrum { eigenvalues, tol })
}

/// |a^(2^k)|^(1/2^k) by k repeated squarings. Each squaring renormalizes
/// by the operator norm and accumulates the exponent in log domain, so
/// the 2^k-th power never overflows or underflows.
pub fn spectral_radius_limit(a: &CMat, k: u32) -> Result<f64> {
    require_square(a, "spectral_radius_limit")?;
    if k == 0 {
        return Err(Error::Precondition("spectral_radius_limit: k must be >= 1".into()));
    }
    let mut b = a.clone();
    let mut log_acc = 0.0f64;
    for i in 0..k {
        let n = operator_norm(&b);
        if n == 0.0 {
            return Ok(0.0);
        }
        log_acc += n.ln() / (1u64 << i) as f64;
        let scaled = b.map(|z| z / n);
        b = &scaled * &scaled;
    }
    let tail = operator_norm(&b);
    if tail == 0.0 {
        return Ok(0.0);
    }
    Ok((log_acc + tail.ln() / (1u64 << k) as f64).exp())
}

/// Pták function r_σ(a) = r_λ(a*a)^(1/2); equals the operator norm.
pub fn ptak(a: &CMat) -> Result<f64> {
    require_square(a, "ptak")?;
    let gram = a.adjoint() * a;
    let top = hermitian_eig(&gram)?.values.into_iter().fold(0.0f64, f64::max);
    Ok(top.max(0.0).sqrt())
}

/// A rational function in one complex variable, coefficients ascending.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

fn strip_trailing_zeros(mut v: Vec<Complex64>) -> Vec<Complex64> {
    while v.len() > 1 && v.last() == Some(&Complex64::ZERO) {
        v.pop();
    }
    v
}

impl RationalFn {
    /// Construct num/den; the denominator must not vanish identically
    /// and the function must be non-constant.
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<RationalFn> {
        let num = strip_trailing_zeros(num);
        let den = strip_trailing_zeros(den);
        if den.is_empty() || den.iter().all(|z| *z == Complex64::ZERO) {
            return Err(Error::InvalidRational("denominator vanishes identically".into()));
        }
        if num.is_empty() || num.iter().all(|z| *z == Complex64::ZERO) {
            return Err(Error::InvalidRational("numerator vanishes identically (constant zero)".into()));
        }
        if num.len() <= 1 && den.len() <= 1 {
            return Err(Error::InvalidRational("constant rational function".into()));
        }
        Ok(RationalFn { num, den })
    }

    pub fn polynomial(num: Vec<Complex64>) -> Result<RationalFn> {
        RationalFn::new(num, vec![cr(1.0)])
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.num
    }

    pub fn denominator(&self) -> &[Complex64] {
        &self.den
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.num, z) / horner(&self.den, z)
    }

    /// Roots of the denominator (the poles), with multiplicity.
    pub fn poles(&self) -> Result<Vec<Complex64>> {
        polynomial_roots(&self.den)
    }

    pub fn zeros(&self) -> Result<Vec<Complex64>> {
        polynomial_roots(&self.num)
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::ZERO, |acc, c| acc * z + c)
}

/// Roots of a polynomial with ascending coefficients, as eigenvalues of
/// its companion matrix. Constants have no roots.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let coeffs = strip_trailing_zeros(coeffs.to_vec());
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let mut companion = CMat::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = cr(1.0);
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -coeffs[i] / lead;
    }
    general_eigenvalues(&companion)
}

/// Evaluate r(a) = γ·Π(a − αᵢe)·Π(a − βⱼe)⁻¹ by alternating factor
/// products and linear solves. All factors are polynomials in a, so the
/// order is immaterial; alternating keeps intermediate norms tame.
pub fn rational_apply(a: &CMat, r: &RationalFn, tol: f64) -> Result<CMat> {
    let n = require_square(a, "rational_apply")?;
    let sp = spectrum(a, tol)?;
    let poles = r.poles()?;
    for pole in &poles {
        let d = sp.min_distance_to(*pole);
        if d <= tol {
            return Err(Error::PoleOnSpectrum {
                pole: format!("{pole}"),
                distance: d,
            });
        }
    }
    let zeros = r.zeros()?;
    let lead_num = *r.num.last().expect("validated nonempty");
    let lead_den = *r.den.last().expect("validated nonempty");
    let gamma = lead_num / lead_den;

    let mut acc = identity(n).map(|z| z * gamma);
    let mut zi = zeros.iter();
    let mut pi = poles.iter();
    loop {
        match (zi.next(), pi.next()) {
            (None, None) => break,
            (alpha, beta) => {
                if let Some(alpha) = alpha {
                    acc = &acc * (a - identity(n).map(|z| z * *alpha));
                }
                if let Some(beta) = beta {
                    let factor = a - identity(n).map(|z| z * *beta);
                    acc = solve(&factor, &acc).map_err(|_| Error::NotInvertible(
                        format!("pole factor (a − {beta}·e) is numerically singular"),
                    ))?;
                }
            }
        }
    }
    Ok(acc)
}

/// b = Σ_{n≥1} (1/2 choose n)·aⁿ with (e+b)² = e+a, for r_λ(a) < 1.
/// Hermitian input yields a Hermitian square root (the series has real
/// coefficients).
pub fn sqrt_series(a: &CMat) -> Result<CMat> {
    let n = require_square(a, "sqrt_series")?;
    let radius = spectrum(a, 1e-12)?.radius();
    if radius >= 1.0 {
        return Err(Error::Precondition(format!(
            "sqrt_series requires r_λ(a) < 1, got {radius:.6}"
        )));
    }
    let cutoff = 1e-14 * (1.0 + a.norm());
    let mut coeff = 0.5f64;
    let mut power = a.clone();
    let mut sum = CMat::zeros(n, n);
    for m in 1..=10_000usize {
        let term = power.map(|z| z * coeff);
        sum += &term;
        if term.norm() < cutoff {
            return Ok(sum);
        }
        coeff *= (0.5 - m as f64) / (m as f64 + 1.0);
        power = &power * a;
    }
    Err(Error::NoConvergence(
        "square-root series did not reach its cutoff within 10^4 terms".into(),
    ))
}

/// Unique positive square root of a positive element, by Hermitian
/// eigendecomposition. Eigenvalues in [−tol·‖a‖, 0) are rounding noise
/// and clamp to zero; anything lower is rejected.
pub fn positive_sqrt(a: &CMat, tol: f64) -> Result<CMat> {
    require_square(a, "positive_sqrt")?;
    require_hermitian(a, tol.max(1e-12) * 100.0, "positive_sqrt")?;
    let eig = hermitian_eig(a)?;
    let scale = eig.values.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let floor = -tol * scale;
    for l in &eig.values {
        if *l < floor {
            return Err(Error::NotPositive(format!(
                "eigenvalue {l:.6e} below −tol·‖a‖ = {floor:.6e}"
            )));
        }
    }
    Ok(eig.apply(|l| cr(l.max(0.0).sqrt())))
}

/// |a| = (a*a)^(1/2).
pub fn abs_value(a: &CMat, tol: f64) -> Result<CMat> {
    require_square(a, "abs_value")?;
    positive_sqrt(&(a.adjoint() * a), tol)
}

/// Polar factorisation a = u·p with u unitary and p = |a| positive
/// invertible; requires σ_min(a) > tol·σ_max(a).
pub fn polar_factorize(a: &CMat, tol: f64) -> Result<(CMat, CMat)> {
    require_square(a, "polar_factorize")?;
    let gram = a.adjoint() * a;
    let eig = hermitian_eig(&gram)?;
    let smax = eig.values.iter().fold(0.0f64, |m, l| m.max(l.max(0.0).sqrt()));
    let smin = eig.values.iter().fold(f64::MAX, |m, l| m.min(l.max(0.0).sqrt()));
    if smax == 0.0 || smin <= tol * smax {
        return Err(Error::NotInvertible(format!(
            "polar_factorize: σ_min = {smin:.3e} ≤ tol·σ_max = {:.3e}",
            tol * smax
        )));
    }
    let p = eig.apply(|l| cr(l.max(0.0).sqrt()));
    let p_inv = eig.apply(|l| cr(1.0 / l.max(0.0).sqrt()));
    let u = a * p_inv;
    Ok((u, p))
}

/// Orthogonal decomposition of a Hermitian element: a = a₊ − a₋ with
/// a₊, a₋ positive and a₊a₋ = a₋a₊ = 0, via a± = (|a| ± a)/2.
pub fn orth_decompose(a: &CMat, tol: f64) -> Result<(CMat, CMat)> {
    require_square(a, "orth_decompose")?;
    require_hermitian(a, tol.max(1e-12) * 100.0, "orth_decompose")?;
    let abs = abs_value(a, tol)?;
    let plus = (&abs + a).map(|z| z * 0.5);
    let minus = (&abs - a).map(|z| z * 0.5);
    Ok((plus, minus))
}

/// Split a reflection (Hermitian unitary) into complementary projections
/// u = p − q with p + q = e and pq = 0.
pub fn reflection_split(u: &CMat, tol: f64) -> Result<(CMat, CMat)> {
    let n = require_square(u, "reflection_split")?;
    let t = tol.max(1e-12) * 100.0;
    require_hermitian(u, t, "reflection_split")
        .map_err(|_| Error::Precondition("reflection_split: input is not Hermitian".into()))?;
    let unitary_defect = (u.adjoint() * u - identity(n)).norm();
    if unitary_defect > t * (n as f64).sqrt() {
        return Err(Error::Precondition(format!(
            "reflection_split: ‖u*u − e‖ = {unitary_defect:.3e}, not a reflection"
        )));
    }
    let p = (identity(n) + u).map(|z| z * 0.5);
    let q = (identity(n) - u).map(|z| z * 0.5);
    Ok((p, q))
}

/// Cayley transform u = (a − iμe)(a + iμe)⁻¹ of a bounded Hermitian
/// element, unitary whenever μ > r_λ(a).
pub fn cayley_bounded(a: &CMat, mu: f64, tol: f64) -> Result<CMat> {
    let n = require_square(a, "cayley_bounded")?;
    require_hermitian(a, tol.max(1e-12) * 100.0, "cayley_bounded")?;
    let radius = spectrum(a, tol)?.radius();
    if mu <= radius {
        return Err(Error::Precondition(format!(
            "cayley_bounded: μ = {mu} must exceed r_λ(a) = {radius:.6}"
        )));
    }
    let i_mu = identity(n).map(|z| z * c(0.0, mu));
    solve(&(a + &i_mu), &(a - &i_mu))
}

/// f(b) for normal b: apply f to the eigenvalues in a unitary
/// diagonalization. Errors when b is not normal or when f is non-finite
/// at a spectral point.
pub fn functional_calculus(
    b: &CMat,
    f: impl Fn(Complex64) -> Complex64,
    tol: f64,
    seed: u64,
) -> Result<CMat> {
    require_square(b, "functional_calculus")?;
    require_normal(b, tol.max(1e-12) * 100.0, "functional_calculus")?;
    let eig = normal_eig(b, tol.max(1e-12) * 100.0, seed)?;
    let n = b.nrows();
    let mut d = CMat::zeros(n, n);
    for (i, l) in eig.values.iter().enumerate() {
        let w = f(*l);
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::UndefinedAtPoint(format!("{l}")));
        }
        d[(i, i)] = w;
    }
    Ok(&eig.vectors * d * eig.vectors.adjoint())
}

/// Directed-plus-reversed Hausdorff distance between two finite point
/// sets (the set-level comparison of the mapping theorems).
pub fn set_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let dir = |xs: &[Complex64], ys: &[Complex64]| {
        xs.iter()
            .map(|x| ys.iter().map(|y| (x - y).norm()).fold(f64::MAX, f64::min))
            .fold(0.0f64, f64::max)
    };
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::MAX;
    }
    dir(a, b).max(dir(b, a))
}

/// Multiset distance by greedy closest-pair matching; falls back to the
/// set Hausdorff distance when the multiplicities disagree.
pub fn multiset_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return set_hausdorff(a, b);
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut matched = 0;
    let mut worst = 0.0f64;
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(d);
            matched += 1;
            if matched == a.len() {
                break;
            }
        }
    }
    worst
}
