//! Homogeneous polynomials in two complex variables and their Fock-space
//! geometry.
//!
//! A degree-`m` state is stored densely as `coeffs[k]`, the coefficient of
//! `ζ₁^(m-k) ζ₂^k`. Monomials are orthogonal under the Gaussian measure and
//! `⟨ζ₁^a ζ₂^b, ζ₁^a ζ₂^b⟩ = a!·b!`, so the inner product on a homogeneous
//! subspace is a diagonal weighting by [`GramDiagonal`].

use std::ops::Sub;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree whose factorial weights stay finite in `f64`.
pub const MAX_DEGREE: usize = 170;

fn factorials() -> &'static [f64; MAX_DEGREE + 1] {
    static TABLE: OnceLock<[f64; MAX_DEGREE + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [1.0; MAX_DEGREE + 1];
        for n in 1..=MAX_DEGREE {
            table[n] = table[n - 1] * n as f64;
        }
        table
    })
}

/// `n!` as a float; overflows to infinity past [`MAX_DEGREE`].
pub fn factorial(n: usize) -> f64 {
    if n <= MAX_DEGREE {
        factorials()[n]
    } else {
        f64::INFINITY
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE {
        Err(Error::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        })
    } else {
        Ok(())
    }
}

/// A homogeneous polynomial of degree `m` in `ζ₁, ζ₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousPolynomial {
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl HomogeneousPolynomial {
    /// Builds a polynomial from its `m + 1` coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::CoefficientCount {
                expected: 1,
                found: 0,
            });
        }
        let degree = coeffs.len() - 1;
        check_degree(degree)?;
        Ok(Self { degree, coeffs })
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Ok(Self {
            degree,
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
        })
    }

    /// The basis monomial `f_k = ζ₁^(m-k) ζ₂^k`.
    pub fn monomial(degree: usize, k: usize) -> Result<Self> {
        let mut p = Self::zero(degree)?;
        if k > degree {
            return Err(Error::CoefficientCount {
                expected: degree + 1,
                found: k + 1,
            });
        }
        p.coeffs[k] = Complex64::new(1.0, 0.0);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Fock norm `sqrt(⟨p, p⟩)`.
    pub fn norm(&self) -> f64 {
        let weights = GramDiagonal::for_valid_degree(self.degree);
        self.coeffs
            .iter()
            .zip(weights.weights())
            .map(|(c, w)| c.norm_sqr() * w)
            .sum::<f64>()
            .sqrt()
    }

    /// Evaluates the polynomial at `(ζ₁, ζ₂)`.
    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        let m = self.degree as i32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * z1.powi(m - k as i32) * z2.powi(k as i32))
            .sum()
    }
}

impl Sub for &HomogeneousPolynomial {
    type Output = Result<HomogeneousPolynomial>;

    fn sub(self, rhs: Self) -> Self::Output {
        if self.degree != rhs.degree {
            return Err(Error::InhomogeneousPairing {
                left: self.degree,
                right: rhs.degree,
            });
        }
        Ok(HomogeneousPolynomial {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

/// Diagonal of the monomial Gram matrix on the degree-`m` subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct GramDiagonal {
    degree: usize,
    weights: Vec<f64>,
}

impl GramDiagonal {
    fn for_valid_degree(degree: usize) -> Self {
        let weights = (0..=degree)
            .map(|k| factorial(degree - k) * factorial(k))
            .collect();
        Self { degree, weights }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// `weights[k] = (m-k)!·k!`.
pub fn gram_diagonal(m: usize) -> Result<GramDiagonal> {
    check_degree(m)?;
    Ok(GramDiagonal::for_valid_degree(m))
}

/// Closed form of `⟨ζ₁^a ζ₂^b, ζ₁^c ζ₂^d⟩` under the product Gaussian measure.
pub fn monomial_inner_product(a: usize, b: usize, c: usize, d: usize) -> Complex64 {
    if (a, b) == (c, d) {
        Complex64::new(factorial(a) * factorial(b), 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// `⟨p, q⟩ = Σ p_k · conj(q_k) · (m-k)!·k!`, conjugate-linear in `q`.
pub fn poly_inner_product(p: &HomogeneousPolynomial, q: &HomogeneousPolynomial) -> Result<Complex64> {
    if p.degree != q.degree {
        return Err(Error::InhomogeneousPairing {
            left: p.degree,
            right: q.degree,
        });
    }
    let gram = GramDiagonal::for_valid_degree(p.degree);
    Ok(p.coeffs
        .iter()
        .zip(&q.coeffs)
        .zip(gram.weights())
        .map(|((a, b), w)| a * b.conj() * *w)
        .sum())
}

/// Rescales `p` so that its leading coefficient (of `ζ₁^m`) is exactly one.
pub fn normalize_leading(p: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
    let lead = p.coeffs[0];
    if lead == Complex64::new(0.0, 0.0) {
        return Err(Error::CannotGaugeFix);
    }
    let mut out = p.scaled(lead.inv());
    out.coeffs[0] = Complex64::new(1.0, 0.0);
    Ok(out)
}

/// Fallback gauge when the leading coefficient vanishes: the largest
/// coefficient `coeffs[k*]` is mapped to `i^k*`, which agrees with
/// [`normalize_leading`] when `k* = 0` and keeps the alternating
/// real/imaginary coefficient pattern of the symmetric eigenfunctions.
pub fn normalize_max_modulus(p: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
    let (k, pivot) = p
        .coeffs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(k, c)| (k, *c))
        .expect("at least one coefficient");
    if pivot.norm() == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let target = Complex64::i().powu(k as u32);
    Ok(p.scaled(target / pivot))
}

/// [`normalize_leading`] with the max-modulus fallback.
pub fn gauge_fix(p: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
    match normalize_leading(p) {
        Ok(q) => Ok(q),
        Err(Error::CannotGaugeFix) => normalize_max_modulus(p),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_pairings() {
        assert_eq!(monomial_inner_product(0, 0, 0, 0), c(1.0, 0.0));
        assert_eq!(monomial_inner_product(2, 1, 2, 1), c(2.0, 0.0));
        assert_eq!(monomial_inner_product(1, 0, 0, 1), c(0.0, 0.0));
    }

    #[test]
    fn gram_weights() {
        assert_eq!(gram_diagonal(2).unwrap().weights(), &[2.0, 1.0, 2.0]);
        assert_eq!(gram_diagonal(3).unwrap().weights(), &[6.0, 2.0, 2.0, 6.0]);
        assert_eq!(gram_diagonal(0).unwrap().weights(), &[1.0]);
        assert!(matches!(
            gram_diagonal(171),
            Err(Error::DegreeTooLarge { degree: 171, .. })
        ));
        let w = gram_diagonal(170).unwrap();
        assert!(w.weights().iter().all(|x| x.is_finite() && *x > 0.0));
    }

    #[test]
    fn polynomial_pairings() {
        let z1z2 = HomogeneousPolynomial::from_real(&[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(poly_inner_product(&z1z2, &z1z2).unwrap(), c(1.0, 0.0));

        let z1sq = HomogeneousPolynomial::monomial(2, 0).unwrap();
        let z2sq = HomogeneousPolynomial::monomial(2, 2).unwrap();
        assert_eq!(poly_inner_product(&z1sq, &z2sq).unwrap(), c(0.0, 0.0));

        let mixed = HomogeneousPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(poly_inner_product(&mixed, &z1sq).unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn pairing_rejects_mixed_degrees() {
        let p = HomogeneousPolynomial::monomial(2, 0).unwrap();
        let q = HomogeneousPolynomial::monomial(3, 0).unwrap();
        let err = poly_inner_product(&p, &q).unwrap_err();
        assert!(err.to_string().starts_with("inhomogeneous pairing"));
    }

    #[test]
    fn leading_gauge() {
        let p = HomogeneousPolynomial::new(vec![c(2.0, 0.0), c(0.0, 4.0)]).unwrap();
        let q = normalize_leading(&p).unwrap();
        assert_eq!(q.coeffs(), &[c(1.0, 0.0), c(0.0, 2.0)]);

        let p = HomogeneousPolynomial::new(vec![c(1.0, 0.0), c(0.0, 1.0 / 3.0)]).unwrap();
        assert_eq!(normalize_leading(&p).unwrap(), p);

        let p = HomogeneousPolynomial::from_real(&[0.0, 1.0]).unwrap();
        assert_eq!(normalize_leading(&p).unwrap_err(), Error::CannotGaugeFix);
        assert_eq!(
            normalize_leading(&p).unwrap_err().to_string(),
            "cannot gauge-fix: leading coefficient vanishes"
        );
    }

    #[test]
    fn max_modulus_fallback_uses_alternating_phase() {
        let p = HomogeneousPolynomial::new(vec![c(0.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
        let q = gauge_fix(&p).unwrap();
        assert!((q.coeffs()[1] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((q.coeffs()[2] - c(-0.5, 0.0)).norm() < 1e-15);
        assert_eq!(
            gauge_fix(&HomogeneousPolynomial::zero(3).unwrap()).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn norm_matches_self_pairing() {
        let p = HomogeneousPolynomial::new(vec![c(1.0, 2.0), c(-0.5, 0.25), c(0.0, 3.0)]).unwrap();
        let ip = poly_inner_product(&p, &p).unwrap();
        assert!((p.norm() * p.norm() - ip.re).abs() < 1e-12);
        assert_eq!(ip.im, 0.0);
    }

    #[test]
    fn empty_coefficients_rejected() {
        assert!(HomogeneousPolynomial::new(vec![]).is_err());
        assert!(HomogeneousPolynomial::zero(200).is_err());
    }
}
