//! Characters and Gelfand transforms of commutative matrix *-algebras,
//! the state ↔ probability-measure bijection over a finite character
//! set, and the ℤ/N shadow of Wiener's inversion theorem.

use num_complex::Complex64;

use crate::algebra::StarAlgebra;
use crate::cmat::{c, cr, solve, CMat, CVec};
use crate::eigen::joint_diagonalize;
use crate::error::{Error, Result};
use crate::states::Functional;

/// Sup-distance below which two diagonal value patterns are the same
/// character.
const CHARACTER_DEDUP_TOL: f64 = 1e-8;

/// The character space Δ(A) of a commutative *-closed matrix algebra:
/// the multiplicative Hermitian functionals, realized as vector states
/// at the joint eigenvectors, together with the diagonalizing unitary
/// and the partition of ambient coordinates by character.
#[derive(Debug, Clone)]
pub struct CharacterSet {
    characters: Vec<Functional>,
    /// values[t][j] = τ_t(b_j) over the algebra basis.
    values: Vec<CVec>,
    joint_diagonalizer: CMat,
    block_pattern: Vec<Vec<usize>>,
}

impl CharacterSet {
    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn characters(&self) -> &[Functional] {
        &self.characters
    }

    /// τ_t on the j-th basis element.
    pub fn value(&self, t: usize, j: usize) -> Complex64 {
        self.values[t][j]
    }

    pub fn value_vectors(&self) -> &[CVec] {
        &self.values
    }

    pub fn joint_diagonalizer(&self) -> &CMat {
        &self.joint_diagonalizer
    }

    /// Ambient coordinates (columns of the diagonalizer) evaluating to
    /// each character.
    pub fn block_pattern(&self) -> &[Vec<usize>] {
        &self.block_pattern
    }
}

/// Extract the characters of a commutative *-closed algebra by
/// simultaneous unitary diagonalization of the Hermitian parts of its
/// basis; each distinct diagonal value pattern is one character. The
/// all-zero pattern (a non-unital algebra's degenerate coordinate) is
/// not a character and is dropped.
pub fn characters(algebra: &StarAlgebra, seed: u64) -> Result<CharacterSet> {
    let tol = algebra.tol().max(1e-12);
    if !algebra.is_commutative() {
        return Err(Error::NotCommutative(format!(
            "characters: commutator defect {:.3e}",
            algebra.commutativity_defect()
        )));
    }
    let closure = algebra.closure_residual();
    if closure > tol * 1e3 {
        return Err(Error::Precondition(format!(
            "characters: basis is not *-closed (closure residual {closure:.3e})"
        )));
    }

    let n = algebra.ambient_dim();
    let mut family = Vec::with_capacity(2 * algebra.dim());
    for b in algebra.basis() {
        let (h, k) = crate::cmat::hermitian_parts(b);
        if h.norm() > 1e-14 {
            family.push(h);
        }
        if k.norm() > 1e-14 {
            family.push(k);
        }
    }
    let u = joint_diagonalize(&family, tol, seed)?;

    // Diagonal value of every basis element at every ambient coordinate.
    let mut column_values: Vec<CVec> = Vec::with_capacity(n);
    let diags: Vec<CVec> = algebra
        .basis()
        .iter()
        .map(|b| {
            let d = u.adjoint() * b * &u;
            CVec::from_iterator(n, (0..n).map(|i| d[(i, i)]))
        })
        .collect();
    for col in 0..n {
        column_values.push(CVec::from_iterator(
            algebra.dim(),
            (0..algebra.dim()).map(|j| diags[j][col]),
        ));
    }

    // Group coordinates whose value patterns agree.
    let mut block_pattern: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<CVec> = Vec::new();
    'cols: for col in 0..n {
        for (t, rep) in reps.iter().enumerate() {
            let dist = (&column_values[col] - rep)
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            if dist <= CHARACTER_DEDUP_TOL {
                block_pattern[t].push(col);
                continue 'cols;
            }
        }
        reps.push(column_values[col].clone());
        block_pattern.push(vec![col]);
    }

    // Drop the zero pattern: the zero functional is not a character.
    let mut keep: Vec<usize> = Vec::new();
    for (t, rep) in reps.iter().enumerate() {
        let sup = rep.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if sup > CHARACTER_DEDUP_TOL {
            keep.push(t);
        }
    }

    let mut characters_vec = Vec::with_capacity(keep.len());
    let mut values = Vec::with_capacity(keep.len());
    let mut pattern = Vec::with_capacity(keep.len());
    for &t in &keep {
        let col = block_pattern[t][0];
        let x = CVec::from_column_slice(u.column(col).as_slice());
        characters_vec.push(Functional::vector_state(&x));
        values.push(reps[t].clone());
        pattern.push(block_pattern[t].clone());
    }

    if characters_vec.len() != algebra.dim() {
        return Err(Error::ResidualTooLarge {
            context: format!(
                "character count {} does not match algebra dimension {}",
                characters_vec.len(),
                algebra.dim()
            ),
            residual: (characters_vec.len() as f64 - algebra.dim() as f64).abs(),
            tolerance: 0.0,
        });
    }

    Ok(CharacterSet {
        characters: characters_vec,
        values,
        joint_diagonalizer: u,
        block_pattern: pattern,
    })
}

/// Gelfand transform â = (τ(a))_τ of an element given in algebra
/// coordinates.
pub fn gelfand_transform(coords: &CVec, chars: &CharacterSet) -> Result<CVec> {
    let k = chars
        .values
        .first()
        .map(|v| v.len())
        .unwrap_or(0);
    if coords.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "gelfand_transform: {} coordinates over a basis of size {k}",
            coords.len()
        )));
    }
    Ok(CVec::from_iterator(
        chars.len(),
        chars.values.iter().map(|v| {
            coords
                .iter()
                .zip(v.iter())
                .map(|(x, t)| x * t)
                .sum::<Complex64>()
        }),
    ))
}

/// A probability measure on a finite character set.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    /// Validate nonnegativity (to −1e−12) and total mass 1 (to 1e−12).
    pub fn probability(weights: Vec<f64>) -> Result<DiscreteMeasure> {
        if weights.iter().any(|w| *w < -1e-12) {
            return Err(Error::ResidualTooLarge {
                context: "DiscreteMeasure: negative weight".into(),
                residual: weights.iter().cloned().fold(0.0, f64::min).abs(),
                tolerance: 1e-12,
            });
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::ResidualTooLarge {
                context: "DiscreteMeasure: total mass".into(),
                residual: (total - 1.0).abs(),
                tolerance: 1e-12,
            });
        }
        Ok(DiscreteMeasure { weights })
    }

    /// Weights without the probability constraints (vector measures of
    /// non-unit vectors).
    pub fn raw(weights: Vec<f64>) -> DiscreteMeasure {
        DiscreteMeasure { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i] > tol).collect()
    }
}

/// The unique probability measure μ on Δ(A) with ψ(a) = Σ_τ â(τ)·μ_τ,
/// obtained by solving the (invertible) character linear system. Errors
/// when ψ is not a state or the reconstruction residual survives.
pub fn bochner_measure(
    psi: &Functional,
    algebra: &StarAlgebra,
    chars: &CharacterSet,
    tol: f64,
) -> Result<DiscreteMeasure> {
    if !crate::states::is_positive(psi, algebra, tol)? {
        return Err(Error::FunctionalNotPositive("bochner_measure: ψ is not positive".into()));
    }
    let v = crate::states::variation(psi, algebra)?;
    if (v - 1.0).abs() > 1e-6 {
        return Err(Error::Precondition(format!(
            "bochner_measure: ψ is not a state (variation {v})"
        )));
    }
    let k = algebra.dim();
    if chars.len() != k {
        return Err(Error::DimensionMismatch(
            "bochner_measure: character count differs from algebra dimension".into(),
        ));
    }
    // M[j, t] = τ_t(b_j); M·μ = (ψ(b_j))_j.
    let m = CMat::from_fn(k, k, |j, t| chars.value(t, j));
    let rhs = psi.basis_values(algebra);
    let mu = solve(&m, &CMat::from_fn(k, 1, |j, _| rhs[j]))?;
    let residual = (&m * &mu - CMat::from_fn(k, 1, |j, _| rhs[j])).norm();
    let scale = rhs.norm().max(1.0);
    if residual > tol.max(1e-12) * 1e3 * scale {
        return Err(Error::ResidualTooLarge {
            context: "bochner_measure reconstruction".into(),
            residual,
            tolerance: tol * 1e3 * scale,
        });
    }
    let mut weights = Vec::with_capacity(k);
    for t in 0..k {
        let w = mu[(t, 0)];
        if w.im.abs() > 1e-9 {
            return Err(Error::ResidualTooLarge {
                context: "bochner_measure: complex weight".into(),
                residual: w.im.abs(),
                tolerance: 1e-9,
            });
        }
        weights.push(w.re);
    }
    DiscreteMeasure::probability(weights)
}

/// Direct O(N²) DFT over ℤ/N: â(k) = Σ_j a(j)·e^(−2πi·jk/N).
pub fn dft(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let w = -2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|k| {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, a)| a * Complex64::from_polar(1.0, w * (j * k) as f64))
                .sum()
        })
        .collect()
}

pub fn inverse_dft(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let w = 2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|j| {
            values
                .iter()
                .enumerate()
                .map(|(k, v)| v * Complex64::from_polar(1.0, w * (j * k) as f64))
                .sum::<Complex64>()
                / cr(n as f64)
        })
        .collect()
}

/// Convolution inverse in ℂ[ℤ/N]: the inverse DFT of the pointwise
/// reciprocals. Errors when the transform vanishes at some character —
/// the abstract Wiener obstruction.
pub fn wiener_inverse(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    if coeffs.is_empty() {
        return Err(Error::DimensionMismatch("wiener_inverse: empty coefficients".into()));
    }
    let values = dft(coeffs);
    let min_mod = values.iter().map(|z| z.norm()).fold(f64::MAX, f64::min);
    if min_mod <= tol {
        return Err(Error::NotInvertible(format!(
            "the transform vanishes at some character (min |â| = {min_mod:.3e})"
        )));
    }
    let recip: Vec<Complex64> = values.iter().map(|z| c(1.0, 0.0) / z).collect();
    Ok(inverse_dft(&recip))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, group_ring, FiniteGroup};
    use crate::cmat::identity;
    use crate::random;
    use rand::Rng;

    #[test]
    fn scalars_have_one_character() {
        let a = build_algebra(&[], 3, 1e-10).unwrap();
        let chars = characters(&a, 1).unwrap();
        assert_eq!(chars.len(), 1);
        // τ(e) = 1.
        let e_coords = a.coords(&identity(3)).unwrap();
        let t = gelfand_transform(&e_coords, &chars).unwrap();
        assert!((t[0] - cr(1.0)).norm() < 1e-10);
    }

    #[test]
    fn diagonal_algebra_characters_are_coordinate_evaluations() {
        let d = CMat::from_diagonal(&CVec::from_vec(vec![cr(1.0), cr(2.0), cr(-3.0)]));
        let a = build_algebra(std::slice::from_ref(&d), 3, 1e-10).unwrap();
        let chars = characters(&a, 5).unwrap();
        assert_eq!(chars.len(), 3);
        // The unit transforms to the all-ones vector.
        let e_coords = a.coords(&identity(3)).unwrap();
        let ones = gelfand_transform(&e_coords, &chars).unwrap();
        for z in ones.iter() {
            assert!((z - cr(1.0)).norm() < 1e-10);
        }
        let coords = a.coords(&d).unwrap();
        let t = gelfand_transform(&coords, &chars).unwrap();
        let mut got: Vec<f64> = t.iter().map(|z| z.re).collect();
        got.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((got[0] + 3.0).abs() < 1e-9);
        assert!((got[1] - 1.0).abs() < 1e-9);
        assert!((got[2] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn cyclic_group_ring_characters_match_dft_oracle() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let (a, deltas) = group_ring(&g, 1e-10).unwrap();
        let chars = characters(&a, 11).unwrap();
        assert_eq!(chars.len(), 4);
        let coords = a.coords(&deltas[1]).unwrap();
        let t = gelfand_transform(&coords, &chars).unwrap();
        // Values are the 4th roots of unity, each exactly once.
        for k in 0..4 {
            let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 4.0);
            let dist = t.iter().map(|z| (z - root).norm()).fold(f64::MAX, f64::min);
            assert!(dist < 1e-9, "missing character value {root}");
        }
        // Multiplicativity: transform(δ₁·δ₁) = transform(δ₁)².
        let sq_coords = a.coords(&(&deltas[1] * &deltas[1])).unwrap();
        let t_sq = gelfand_transform(&sq_coords, &chars).unwrap();
        for i in 0..4 {
            assert!((t_sq[i] - t[i] * t[i]).norm() < 1e-9);
        }
    }

    #[test]
    fn characters_are_hermitian_and_multiplicative() {
        let mut rng = random::rng(151);
        // Commutative algebra generated by one random normal matrix.
        let b = random::normal(&mut rng, 4);
        let a = build_algebra(std::slice::from_ref(&b), 4, 1e-10).unwrap();
        let chars = characters(&a, 13).unwrap();
        assert_eq!(chars.len(), a.dim());
        for tau in chars.characters() {
            for bi in a.basis() {
                // Hermitian: τ(b*) = conj(τ(b)).
                let lhs = tau.eval(&bi.adjoint());
                let rhs = tau.eval(bi).conj();
                assert!((lhs - rhs).norm() < 1e-10);
                for bj in a.basis() {
                    // Multiplicative on the algebra.
                    let prod = tau.eval(&(bi * bj));
                    assert!((prod - tau.eval(bi) * tau.eval(bj)).norm() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn transform_sup_norm_is_spectral_radius_and_operator_norm() {
        let mut rng = random::rng(157);
        for _ in 0..5 {
            let b = random::normal(&mut rng, 4);
            let a = build_algebra(std::slice::from_ref(&b), 4, 1e-10).unwrap();
            let chars = characters(&a, 17).unwrap();
            let coords = a.coords(&b).unwrap();
            let t = gelfand_transform(&coords, &chars).unwrap();
            let sup = t.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            let radius = crate::spectral::spectrum(&b, 1e-10).unwrap().radius();
            let opnorm = crate::cmat::operator_norm(&b);
            assert!((sup - radius).abs() < 1e-9 * radius.max(1.0));
            assert!((sup - opnorm).abs() < 1e-9 * opnorm.max(1.0));
        }
    }

    #[test]
    fn characters_reject_noncommutative_input() {
        let a = build_algebra(&crate::commutant::full_matrix_basis(2), 2, 1e-10).unwrap();
        assert!(matches!(characters(&a, 1), Err(Error::NotCommutative(_))));
    }

    #[test]
    fn bochner_point_mass_for_a_character() {
        let d = CMat::from_diagonal(&CVec::from_vec(vec![cr(1.0), cr(2.0)]));
        let a = build_algebra(&[d], 2, 1e-10).unwrap();
        let chars = characters(&a, 19).unwrap();
        let tau0 = chars.characters()[0].clone();
        let mu = bochner_measure(&tau0, &a, &chars, 1e-10).unwrap();
        assert!((mu.weights()[0] - 1.0).abs() < 1e-10);
        assert!(mu.weights()[1].abs() < 1e-10);
    }

    #[test]
    fn bochner_of_half_trace_on_diagonal_algebra() {
        let d = CMat::from_diagonal(&CVec::from_vec(vec![cr(1.0), cr(2.0)]));
        let a = build_algebra(&[d], 2, 1e-10).unwrap();
        let chars = characters(&a, 23).unwrap();
        let psi = Functional::normalized_trace(2);
        let mu = bochner_measure(&psi, &a, &chars, 1e-10).unwrap();
        assert!((mu.weights()[0] - 0.5).abs() < 1e-10);
        assert!((mu.weights()[1] - 0.5).abs() < 1e-10);
    }

    #[test]
    fn bochner_reconstructs_random_states_on_group_ring() {
        let g = FiniteGroup::cyclic(8).unwrap();
        let (a, _) = group_ring(&g, 1e-10).unwrap();
        let chars = characters(&a, 29).unwrap();
        let mut rng = random::rng(163);
        for _ in 0..5 {
            // Random state: convex combination of vector states.
            let mut f = CMat::zeros(8, 8);
            let mut total = 0.0f64;
            let raw: Vec<f64> = (0..3).map(|_| rng.random::<f64>() + 0.1).collect();
            let sum: f64 = raw.iter().sum();
            for w in raw {
                let x = random::unit_vector(&mut rng, 8);
                f += (&x * x.adjoint()).map(|z| z * (w / sum));
                total += w / sum;
            }
            assert!((total - 1.0).abs() < 1e-12);
            let psi = Functional::new(f).unwrap();
            let mu = bochner_measure(&psi, &a, &chars, 1e-10).unwrap();
            assert!(mu.weights().iter().all(|w| *w >= -1e-12));
            assert!((mu.total() - 1.0).abs() < 1e-12);
            // ψ(a) = Σ â(τ)μ_τ on every basis element.
            for j in 0..a.dim() {
                let mut coords = CVec::zeros(a.dim());
                coords[j] = cr(1.0);
                let t = gelfand_transform(&coords, &chars).unwrap();
                let integral: Complex64 = t
                    .iter()
                    .zip(mu.weights())
                    .map(|(z, w)| z * cr(*w))
                    .sum();
                let direct = psi.eval(&a.basis()[j]);
                assert!((integral - direct).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn bochner_is_affine() {
        let d = CMat::from_diagonal(&CVec::from_vec(vec![cr(1.0), cr(2.0), cr(3.0)]));
        let a = build_algebra(&[d], 3, 1e-10).unwrap();
        let chars = characters(&a, 31).unwrap();
        let mut rng = random::rng(167);
        let x = random::unit_vector(&mut rng, 3);
        let y = random::unit_vector(&mut rng, 3);
        let psi1 = Functional::vector_state(&x);
        let psi2 = Functional::vector_state(&y);
        let lambda = 0.3;
        let mixed = psi1.scale(lambda).add(&psi2.scale(1.0 - lambda)).unwrap();
        let mu1 = bochner_measure(&psi1, &a, &chars, 1e-10).unwrap();
        let mu2 = bochner_measure(&psi2, &a, &chars, 1e-10).unwrap();
        let mu = bochner_measure(&mixed, &a, &chars, 1e-10).unwrap();
        for t in 0..3 {
            let expect = lambda * mu1.weights()[t] + (1.0 - lambda) * mu2.weights()[t];
            assert!((mu.weights()[t] - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn wiener_inverse_examples() {
        // δ_e is its own inverse.
        let mut delta = vec![Complex64::ZERO; 8];
        delta[0] = cr(1.0);
        let inv = wiener_inverse(&delta, 1e-10).unwrap();
        assert!((inv[0] - cr(1.0)).norm() < 1e-12);
        assert!(inv[1..].iter().all(|z| z.norm() < 1e-12));

        // 2δ_e inverts to δ_e/2.
        let two_delta: Vec<Complex64> = delta.iter().map(|z| z * 2.0).collect();
        let inv = wiener_inverse(&two_delta, 1e-10).unwrap();
        assert!((inv[0] - cr(0.5)).norm() < 1e-12);

        // δ_e + δ₁/2 on ℤ/16: convolution with the inverse is δ_e.
        let n = 16;
        let mut a = vec![Complex64::ZERO; n];
        a[0] = cr(1.0);
        a[1] = cr(0.5);
        let inv = wiener_inverse(&a, 1e-10).unwrap();
        let g = FiniteGroup::cyclic(n).unwrap();
        let conv = g.convolve(&a, &inv).unwrap();
        assert!((conv[0] - cr(1.0)).norm() < 1e-10);
        for z in &conv[1..] {
            assert!(z.norm() < 1e-10);
        }

        // A transform with a zero character value is rejected: the
        // constant vector has â(k) = 0 for k ≠ 0.
        let flat = vec![cr(0.25); 4];
        assert!(matches!(wiener_inverse(&flat, 1e-10), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn dft_inverse_dft_round_trip() {
        let mut rng = random::rng(173);
        let a: Vec<Complex64> = (0..12).map(|_| random::complex_gaussian(&mut rng)).collect();
        let back = inverse_dft(&dft(&a));
        for (x, y) in a.iter().zip(&back) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
