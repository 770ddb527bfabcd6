//! Eigenvalues and eigenvectors of tridiagonal representations.
//!
//! The primary route runs the three-term recursion
//! `Q_{n+1} = [(λ - b_n) Q_n - c_{n-1} Q_{n-1}] / d_n` (with `Q_{-1} = 0`,
//! `Q_0 = 1`): the eigenvalues are the zeros of `Q_l` and the eigenvector of
//! `λ_j` is `(Q_0(λ_j), …, Q_{l-1}(λ_j))`. A dense Schur solver serves as an
//! independent oracle and as the fallback when a super-diagonal entry
//! vanishes.

mod dense;
mod exceptional;
mod refine;
mod roots;

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::CDD;
use crate::boson_operator::{QuadraticBosonOperator, TridiagonalMatrix};
use crate::error::{Error, Result};
use crate::fock_poly::{normalize_leading, HomogeneousPolynomial};
use crate::CMatrix;

pub use dense::{dense_eigensolve, dense_eigensolve_tridiagonal};
pub use exceptional::{
    default_cluster_tol, detect_exceptional_point, rank_profile, EigenCluster, ExceptionalReport,
};
pub use roots::polynomial_roots;

/// Coefficient vectors (ascending powers of `λ`) of `Q_0 … Q_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionPolynomials {
    polys: Vec<Vec<Complex64>>,
}

impl RecursionPolynomials {
    /// Matrix size `l`; there are `l + 1` polynomials.
    pub fn degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[Vec<Complex64>] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> &[Complex64] {
        &self.polys[n]
    }

    /// `Q_l`, whose zeros are the eigenvalues.
    pub fn characteristic(&self) -> &[Complex64] {
        self.polys.last().expect("Q_0 always present")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: Vec<Complex64>,
    /// `‖M v - λ v‖ / ‖v‖`.
    pub residual: f64,
}

/// Which algorithm produced a set of eigenpairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Recursion,
    Dense,
}

fn check_recursion(t: &TridiagonalMatrix) -> Result<()> {
    match t.first_zero_super() {
        Some(index) => Err(Error::RecursionInapplicable { index }),
        None => Ok(()),
    }
}

fn shift_mul(p: &[Complex64], shift: Complex64) -> Vec<Complex64> {
    // (λ - shift) · p
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + 1];
    for (j, a) in p.iter().enumerate() {
        out[j + 1] += a;
        out[j] -= a * shift;
    }
    out
}

fn axpy(acc: &mut [Complex64], a: Complex64, p: &[Complex64]) {
    for (x, y) in acc.iter_mut().zip(p) {
        *x += a * y;
    }
}

/// Builds `Q_0 … Q_l` by synthetic multiplication, taking `d_{l-1} := 1`.
pub fn recursion_polynomials(t: &TridiagonalMatrix) -> Result<RecursionPolynomials> {
    check_recursion(t)?;
    let l = t.size();
    let (b, c, d) = (t.diag(), t.sub(), t.sup());
    let mut polys: Vec<Vec<Complex64>> = Vec::with_capacity(l + 1);
    polys.push(vec![Complex64::new(1.0, 0.0)]);
    for n in 0..l {
        let mut next = shift_mul(&polys[n], b[n]);
        if n > 0 {
            axpy(&mut next, -c[n - 1], &polys[n - 1]);
        }
        let dn = if n + 1 < l { d[n] } else { Complex64::new(1.0, 0.0) };
        for x in next.iter_mut() {
            *x /= dn;
        }
        polys.push(next);
    }
    Ok(RecursionPolynomials { polys })
}

/// Monic `det(λ I - M)` from the same recursion with the `d_n` divisions
/// folded out: `P_{n+1} = (λ - b_n) P_n - c_{n-1} d_{n-1} P_{n-1}`.
///
/// `P_l = Q_l · Π d_n`, so the zeros coincide; the monic form avoids the
/// rounding introduced by dividing through by `d_n`.
pub fn monic_characteristic(t: &TridiagonalMatrix) -> Vec<Complex64> {
    let l = t.size();
    let (b, c, d) = (t.diag(), t.sub(), t.sup());
    let mut prev: Vec<Complex64> = Vec::new();
    let mut cur = vec![Complex64::new(1.0, 0.0)];
    for n in 0..l {
        let mut next = shift_mul(&cur, b[n]);
        if n > 0 {
            axpy(&mut next, -(c[n - 1] * d[n - 1]), &prev);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Values `Q_0(λ) … Q_l(λ)` and the derivative `Q_l'(λ)` by running the
/// recursion at a point. Accumulation is in double-double, since near a
/// root `Q_l` is a small difference of large terms.
pub fn evaluate_recursion(t: &TridiagonalMatrix, lambda: Complex64) -> (Vec<Complex64>, Complex64) {
    let l = t.size();
    let (b, c, d) = t.extended();
    let lam = CDD::from(lambda);
    let one = CDD::from(1.0);
    let mut q: Vec<CDD> = Vec::with_capacity(l + 1);
    q.push(one);
    let (mut dprev, mut dcur) = (CDD::ZERO, CDD::ZERO);
    for n in 0..l {
        let dn = if n + 1 < l { d[n] } else { one };
        let shifted = lam - b[n];
        let mut next = shifted * q[n];
        let mut dnext = q[n] + shifted * dcur;
        if n > 0 {
            next = next - c[n - 1] * q[n - 1];
            dnext = dnext - c[n - 1] * dprev;
        }
        q.push(next / dn);
        dprev = dcur;
        dcur = dnext / dn;
    }
    (q.into_iter().map(CDD::to_c64).collect(), dcur.to_c64())
}

/// Newton polishing of a root of `Q_l`, evaluated by the recursion.
///
/// A step is only accepted while it lowers `|Q_l|` and stays within
/// `max_move` of the starting value, so a root cannot migrate to a
/// neighbour.
fn polish(t: &TridiagonalMatrix, start: Complex64, max_move: f64) -> Complex64 {
    let l = t.size();
    let mut lambda = start;
    let (q, mut dq) = evaluate_recursion(t, lambda);
    let mut val = q[l];
    for _ in 0..16 {
        if val.norm() == 0.0 || dq.norm() == 0.0 {
            break;
        }
        let step = val / dq;
        let candidate = lambda - step;
        if (candidate - start).norm() > max_move {
            break;
        }
        let (q, d) = evaluate_recursion(t, candidate);
        if q[l].norm() >= val.norm() {
            break;
        }
        lambda = candidate;
        val = q[l];
        dq = d;
        if step.norm() <= 2.0 * f64::EPSILON * lambda.norm() {
            break;
        }
    }
    lambda
}

/// One step of inverse iteration, rescaled so the first component keeps
/// its value `Q₀ = 1`. Forward evaluation of the recursion amplifies the
/// rounding of `λ` when the couplings are weak; this step removes it. The
/// caller keeps whichever vector has the smaller residual.
fn inverse_iteration_step(t: &TridiagonalMatrix, lambda: Complex64, v: &[Complex64]) -> Vec<Complex64> {
    let y = t.solve_shifted(lambda, v);
    let pivot = if y[0] != Complex64::new(0.0, 0.0) {
        y[0]
    } else {
        let big = y
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("nonempty");
        *big
    };
    if !pivot.is_finite() || pivot == Complex64::new(0.0, 0.0) {
        return v.to_vec();
    }
    let out: Vec<Complex64> = y.iter().map(|z| z / pivot).collect();
    if out.iter().all(|z| z.is_finite()) {
        out
    } else {
        v.to_vec()
    }
}

pub(crate) fn residual_of(h: &CMatrix, lambda: Complex64, v: &[Complex64]) -> f64 {
    let n = v.len();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return f64::INFINITY;
    }
    let mut acc = 0.0;
    for i in 0..n {
        let mut s = -lambda * v[i];
        for (j, x) in v.iter().enumerate() {
            s += h[(i, j)] * x;
        }
        acc += s.norm_sqr();
    }
    acc.sqrt() / norm
}

fn tridiagonal_residual(t: &TridiagonalMatrix, lambda: Complex64, v: &[Complex64]) -> f64 {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mv = t.apply(v);
    mv.iter()
        .zip(v)
        .map(|(a, x)| (a - lambda * x).norm_sqr())
        .sum::<f64>()
        .sqrt()
        / norm
}

/// Total order used for every reported spectrum: real part (quantised at
/// `1e-9`), then imaginary part.
pub fn spectral_order(a: &Complex64, b: &Complex64) -> Ordering {
    let qa = (a.re * 1e9).round();
    let qb = (b.re * 1e9).round();
    qa.total_cmp(&qb).then(a.im.total_cmp(&b.im))
}

pub fn sort_spectrum(values: &mut [Complex64]) {
    values.sort_by(spectral_order);
}

pub(crate) fn sort_pairs(pairs: &mut [EigenPair]) {
    pairs.sort_by(|a, b| spectral_order(&a.value, &b.value));
}

/// All eigenpairs via the recursion: companion-matrix roots of `Q_l`,
/// Newton polishing on the recursion, vectors `(Q_0(λ), …, Q_{l-1}(λ))`
/// sharpened by one inverse-iteration step when that lowers the residual.
pub fn eigen_via_recursion(t: &TridiagonalMatrix) -> Result<Vec<EigenPair>> {
    check_recursion(t)?;
    let l = t.size();
    let roots = polynomial_roots(&monic_characteristic(t))?;
    let polished: Vec<Complex64> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let gap = roots
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, s)| (r - s).norm())
                .fold(f64::INFINITY, f64::min);
            polish(t, *r, 0.25 * gap)
        })
        .collect();
    let mut pairs: Vec<EigenPair> = polished
        .into_iter()
        .map(|value| {
            let (mut q, _) = evaluate_recursion(t, value);
            q.truncate(l);
            let raw = tridiagonal_residual(t, value, &q);
            let refined = inverse_iteration_step(t, value, &q);
            let sharp = tridiagonal_residual(t, value, &refined);
            let (q, residual) = if sharp < raw { (refined, sharp) } else { (q, raw) };
            EigenPair {
                value,
                vector: q,
                residual,
            }
        })
        .collect();
    sort_pairs(&mut pairs);
    Ok(pairs)
}

/// Recursion route when every super-diagonal entry is nonzero, dense
/// fallback otherwise.
pub fn eigenpairs(t: &TridiagonalMatrix) -> Result<(Vec<EigenPair>, Route)> {
    if t.recursion_applicable() {
        eigen_via_recursion(t).map(|p| (p, Route::Recursion))
    } else {
        dense_eigensolve_tridiagonal(t).map(|p| (p, Route::Dense))
    }
}

/// Eigenvalue spacing parameter: `sqrt(1 - α²)` for `|α| ≤ 1`, otherwise
/// `i·sqrt(α² - 1)`, so the spectrum continues from real to imaginary
/// through `|α| = 1`.
pub fn omega(alpha: f64) -> Complex64 {
    let a2 = alpha * alpha;
    if a2 <= 1.0 {
        Complex64::new((1.0 - a2).sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (a2 - 1.0).sqrt())
    }
}

/// `{-mω, -(m-2)ω, …, (m-2)ω, mω}`.
pub fn closed_form_spectrum(m: usize, alpha: f64) -> Vec<Complex64> {
    let w = omega(alpha);
    (0..=m)
        .map(|k| w * (2.0 * k as f64 - m as f64))
        .collect()
}

/// `𝒜 = 2·J₀`, the doubled matrix of `B(1, -1, iα, iα)` on degree `m`.
pub fn doubled_j0(alpha: f64, m: usize) -> TridiagonalMatrix {
    QuadraticBosonOperator::pt_coupled(1.0, -1.0, alpha)
        .tridiagonal_rep(m)
        .scale(Complex64::new(2.0, 0.0))
}

/// The eigenvector as a polynomial `Σ v_k f_k`, gauge-fixed to a unit
/// leading coefficient.
pub fn eigenfunction_of(pair: &EigenPair, m: usize) -> Result<HomogeneousPolynomial> {
    if pair.vector.len() != m + 1 {
        return Err(Error::CoefficientCount {
            expected: m + 1,
            found: pair.vector.len(),
        });
    }
    normalize_leading(&HomogeneousPolynomial::new(pair.vector.clone())?)
}

/// Greedy nearest-neighbour pairing of two spectra; returns the largest
/// paired distance (infinite when the lengths differ).
pub fn match_spectra(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut candidates: Vec<(f64, usize, usize)> = a
        .iter()
        .enumerate()
        .flat_map(|(i, x)| b.iter().enumerate().map(move |(j, y)| ((x - y).norm(), i, j)))
        .collect();
    candidates.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for (dist, i, j) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(dist);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn values(pairs: &[EigenPair]) -> Vec<Complex64> {
        pairs.iter().map(|p| p.value).collect()
    }

    fn assert_spectrum(found: &[Complex64], expect: &[Complex64], tol: f64) {
        let d = match_spectra(found, expect);
        assert!(d < tol, "spectra differ by {d}: {found:?} vs {expect:?}");
    }

    #[test]
    fn recursion_degree_one() {
        let t = doubled_j0(0.6, 1);
        let rp = recursion_polynomials(&t).unwrap();
        assert_eq!(rp.get(0), &[c(1.0, 0.0)]);
        // Q₂ = (λ² - 1 + 0.36) / (0.6i)
        let q2 = rp.characteristic();
        let lead = q2[2];
        assert!((q2[0] / lead - c(-0.64, 0.0)).norm() < 1e-15);
        assert!((q2[1] / lead).norm() < 1e-15);
    }

    #[test]
    fn recursion_zero_diagonal() {
        let t = TridiagonalMatrix::new(vec![c(0.0, 0.0); 2], vec![c(0.0, 1.0)], vec![c(0.0, 1.0)]);
        let rp = recursion_polynomials(&t).unwrap();
        let q2 = rp.characteristic();
        // λ² - i·i = λ² + 1, up to the 1/d₀ factor
        assert!((q2[0] / q2[2] - c(1.0, 0.0)).norm() < 1e-15);
        let pairs = eigen_via_recursion(&t).unwrap();
        assert_spectrum(&values(&pairs), &[c(0.0, 1.0), c(0.0, -1.0)], 1e-14);
    }

    #[test]
    fn recursion_degrees_match_index() {
        let rp = recursion_polynomials(&doubled_j0(0.3, 5)).unwrap();
        for (n, q) in rp.polys().iter().enumerate() {
            assert_eq!(q.len(), n + 1);
            assert!(q[n].norm() > 0.0);
        }
        assert_eq!(rp.degree(), 6);
    }

    #[test]
    fn recursion_rejects_zero_super() {
        let t = doubled_j0(0.0, 2);
        assert_eq!(
            recursion_polynomials(&t).unwrap_err(),
            Error::RecursionInapplicable { index: 0 }
        );
        assert!(eigen_via_recursion(&t).is_err());
        let (pairs, route) = eigenpairs(&t).unwrap();
        assert_eq!(route, Route::Dense);
        assert_spectrum(&values(&pairs), &[c(-2.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)], 1e-14);
    }

    #[test]
    fn monic_form_matches_scaled_q() {
        let t = doubled_j0(0.45, 4);
        let q = recursion_polynomials(&t).unwrap();
        let p = monic_characteristic(&t);
        let q = q.characteristic();
        for (a, b) in p.iter().zip(q) {
            assert!((a - b / q[q.len() - 1]).norm() < 1e-12);
        }
    }

    #[test]
    fn degree_one_eigenpairs() {
        let pairs = eigen_via_recursion(&doubled_j0(0.6, 1)).unwrap();
        assert_spectrum(&values(&pairs), &[c(-0.8, 0.0), c(0.8, 0.0)], 1e-14);
        let top = &pairs[1];
        assert!((top.value - c(0.8, 0.0)).norm() < 1e-14);
        assert!((top.vector[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((top.vector[1] - c(0.0, 1.0 / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn degree_two_spectra() {
        let pairs = eigen_via_recursion(&doubled_j0(0.6, 2)).unwrap();
        assert_spectrum(&values(&pairs), &[c(-1.6, 0.0), c(0.0, 0.0), c(1.6, 0.0)], 1e-13);
        for p in &pairs {
            assert!(p.residual < 1e-12);
        }
        let (pairs, _) = eigenpairs(&doubled_j0(0.0, 2)).unwrap();
        assert_spectrum(&values(&pairs), &[c(-2.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)], 1e-14);
    }

    #[test]
    fn dense_agrees_with_recursion() {
        for &alpha in &[0.2, 0.6, 0.9, 1.5] {
            let t = doubled_j0(alpha, 3);
            let rec = eigen_via_recursion(&t).unwrap();
            let den = dense_eigensolve(&t.to_dense()).unwrap();
            assert!(match_spectra(&values(&rec), &values(&den)) < 1e-10);
        }
    }

    #[test]
    fn closed_forms() {
        assert_spectrum(
            &closed_form_spectrum(3, 0.6),
            &[c(-2.4, 0.0), c(-0.8, 0.0), c(0.8, 0.0), c(2.4, 0.0)],
            1e-14,
        );
        assert_eq!(closed_form_spectrum(2, 1.0), vec![c(0.0, 0.0); 3]);
        assert_spectrum(
            &closed_form_spectrum(2, 1.25),
            &[c(0.0, -1.5), c(0.0, 0.0), c(0.0, 1.5)],
            1e-14,
        );
        let dense = dense_eigensolve(&doubled_j0(1.25, 2).to_dense()).unwrap();
        assert_spectrum(&values(&dense), &closed_form_spectrum(2, 1.25), 1e-12);
        assert_eq!(closed_form_spectrum(0, 0.4), vec![c(0.0, 0.0)]);
        assert_eq!(omega(-0.6), omega(0.6));
    }

    #[test]
    fn trivial_size_one() {
        let t = QuadraticBosonOperator::pt_coupled(2.0, 3.0, 0.5).tridiagonal_rep(0);
        let rp = recursion_polynomials(&t).unwrap();
        assert_eq!(rp.characteristic(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        let pairs = eigen_via_recursion(&t).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].value, c(0.0, 0.0));
        assert_eq!(pairs[0].vector, vec![c(1.0, 0.0)]);
    }

    #[test]
    fn eigenfunctions_degree_two() {
        let pairs = eigen_via_recursion(&doubled_j0(0.6, 2)).unwrap();
        let zero = pairs.iter().find(|p| p.value.norm() < 1e-9).unwrap();
        let f = eigenfunction_of(zero, 2).unwrap();
        let expect = [c(1.0, 0.0), c(0.0, 10.0 / 3.0), c(-1.0, 0.0)];
        for (a, b) in f.coeffs().iter().zip(expect) {
            assert!((a - b).norm() < 1e-12);
        }
        let top = pairs.iter().find(|p| (p.value - 1.6).norm() < 1e-9).unwrap();
        let f = eigenfunction_of(top, 2).unwrap();
        let expect = [c(1.0, 0.0), c(0.0, 2.0 / 3.0), c(-1.0 / 9.0, 0.0)];
        for (a, b) in f.coeffs().iter().zip(expect) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(eigenfunction_of(top, 3).is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = vec![c(1.0, 0.0), c(0.0, 1.5), c(1e-17, -1.5), c(-1.0, 0.0)];
        sort_spectrum(&mut v);
        assert_eq!(v, vec![c(-1.0, 0.0), c(1e-17, -1.5), c(0.0, 1.5), c(1.0, 0.0)]);
    }
}
