//! Weighted composition conjugations, partial/global PT operators and the
//! Fock adjoint on homogeneous subspaces.
//!
//! Antilinear maps are only ever applied to coefficient vectors. The
//! operator sandwich `W H W` is linear and is returned as a matrix.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock_poly::{gauge_fix, gram_diagonal, HomogeneousPolynomial};
use crate::CMatrix;

/// Default relative tolerance for [`classify_symmetry`].
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-9;

const TRIPLE_TOL: f64 = 1e-12;

/// Parameters `(ϑ, η, υ)` of `Wψ(ζ) = υ e^(ηζ) conj(ψ(conj(ϑζ + η)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugationTriple {
    pub theta: Complex64,
    pub eta: Complex64,
    pub upsilon: Complex64,
}

impl ConjugationTriple {
    pub fn new(theta: Complex64, eta: Complex64, upsilon: Complex64) -> Self {
        Self {
            theta,
            eta,
            upsilon,
        }
    }

    /// Unshifted, unweighted triple `(ϑ, 0, 1)`.
    pub fn reflection(theta: f64) -> Self {
        Self::new(theta.into(), 0.0.into(), 1.0.into())
    }

    pub fn unit_theta(&self) -> bool {
        (self.theta.norm() - 1.0).abs() <= TRIPLE_TOL
    }

    pub fn shift_compatible(&self) -> bool {
        (self.theta.conj() * self.eta + self.eta.conj()).norm() <= TRIPLE_TOL
    }

    pub fn weight_normalized(&self) -> bool {
        (self.upsilon.norm_sqr() * self.eta.norm_sqr().exp() - 1.0).abs() <= TRIPLE_TOL
    }

    pub fn is_valid(&self) -> bool {
        self.unit_theta() && self.shift_compatible() && self.weight_normalized()
    }
}

/// True iff the triple defines a conjugation.
pub fn validate_triple(t: &ConjugationTriple) -> bool {
    t.is_valid()
}

/// Applies the product conjugation `W_(ϑ₁,0,υ₁) ⊗ W_(ϑ₂,0,υ₂)` to `p`.
///
/// Only unshifted triples keep the polynomial subspace invariant.
pub fn apply_conjugation(
    triples: &[ConjugationTriple; 2],
    p: &HomogeneousPolynomial,
) -> Result<HomogeneousPolynomial> {
    for t in triples {
        if t.eta != Complex64::new(0.0, 0.0) {
            return Err(Error::ShiftedConjugation { eta: t.eta });
        }
        if !t.is_valid() {
            return Err(Error::InvalidConjugation);
        }
    }
    let m = p.degree();
    let weight = triples[0].upsilon * triples[1].upsilon;
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            weight
                * c.conj()
                * triples[0].theta.powu((m - k) as u32)
                * triples[1].theta.powu(k as u32)
        })
        .collect();
    HomogeneousPolynomial::new(coeffs)
}

/// The four sign-flip conjugations on two variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PtOperator {
    /// `ζ₁ ↦ -ζ₁`: signs (-1, +1).
    Partial1,
    /// `ζ₂ ↦ -ζ₂`: signs (+1, -1).
    Partial2,
    /// Both variables flipped: signs (-1, -1).
    Global,
    /// Plain complex conjugation: signs (+1, +1).
    TimeReversal,
}

impl PtOperator {
    pub const ALL: [PtOperator; 4] = [
        PtOperator::Partial1,
        PtOperator::Partial2,
        PtOperator::Global,
        PtOperator::TimeReversal,
    ];

    pub fn signs(self) -> (i8, i8) {
        match self {
            PtOperator::Partial1 => (-1, 1),
            PtOperator::Partial2 => (1, -1),
            PtOperator::Global => (-1, -1),
            PtOperator::TimeReversal => (1, 1),
        }
    }

    pub fn arity(self) -> usize {
        2
    }

    pub fn triples(self) -> [ConjugationTriple; 2] {
        let (s1, s2) = self.signs();
        [
            ConjugationTriple::reflection(s1.into()),
            ConjugationTriple::reflection(s2.into()),
        ]
    }

    /// `s₁^(m-k) s₂^k` for `k = 0..=m`.
    pub fn sign_pattern(self, m: usize) -> Vec<f64> {
        let (s1, s2) = self.signs();
        (0..=m)
            .map(|k| {
                let a = if s1 < 0 && (m - k) % 2 == 1 { -1.0 } else { 1.0 };
                let b = if s2 < 0 && k % 2 == 1 { -1.0 } else { 1.0 };
                a * b
            })
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            PtOperator::Partial1 => "W2(1)",
            PtOperator::Partial2 => "W2(2)",
            PtOperator::Global => "W2",
            PtOperator::TimeReversal => "T",
        }
    }
}

impl fmt::Display for PtOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Wψ` on coefficients: `c_k ↦ conj(c_k) · s₁^(m-k) · s₂^k`.
pub fn apply_pt(w: PtOperator, p: &HomogeneousPolynomial) -> HomogeneousPolynomial {
    let signs = w.sign_pattern(p.degree());
    let coeffs = p
        .coeffs()
        .iter()
        .zip(signs)
        .map(|(c, s)| c.conj() * s)
        .collect();
    HomogeneousPolynomial::new(coeffs).expect("degree preserved")
}

fn check_square(h: &CMatrix, expected: usize) -> Result<()> {
    if h.nrows() != expected || h.ncols() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            rows: h.nrows(),
            cols: h.ncols(),
        });
    }
    Ok(())
}

/// Fock adjoint `H* = G⁻¹ H† G` on the degree-`m` subspace.
pub fn star_adjoint(h: &CMatrix, m: usize) -> Result<CMatrix> {
    check_square(h, m + 1)?;
    let w = gram_diagonal(m)?;
    let w = w.weights();
    let ht = h.adjoint();
    Ok(DMatrix::from_fn(m + 1, m + 1, |i, j| ht[(i, j)] * (w[j] / w[i])))
}

/// Linear operator `W H W = D · conj(H) · D`, `D = diag(s₁^(m-k) s₂^k)`.
pub fn conjugate_operator(w: PtOperator, h: &CMatrix) -> Result<CMatrix> {
    if h.nrows() == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            rows: 0,
            cols: h.ncols(),
        });
    }
    check_square(h, h.nrows())?;
    let d = w.sign_pattern(h.nrows() - 1);
    Ok(DMatrix::from_fn(h.nrows(), h.ncols(), |i, j| {
        h[(i, j)].conj() * (d[i] * d[j])
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Symmetric,
    Antisymmetric,
    Broken,
}

impl Verdict {
    pub fn short(self) -> char {
        match self {
            Verdict::Symmetric => 'S',
            Verdict::Antisymmetric => 'A',
            Verdict::Broken => 'B',
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Symmetric => "symmetric",
            Verdict::Antisymmetric => "antisymmetric",
            Verdict::Broken => "broken",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryVerdict {
    pub operator: PtOperator,
    pub verdict: Verdict,
    /// `min(‖Wψ - ψ‖, ‖Wψ + ψ‖) / ‖ψ‖` in the Fock norm.
    pub residual: f64,
}

/// Classifies a state as symmetric, antisymmetric or broken under `w`.
///
/// The state is gauge-fixed first (leading coefficient one, max-modulus
/// fallback); `tol` is relative to the Fock norm of the gauge-fixed state.
pub fn classify_symmetry(
    p: &HomogeneousPolynomial,
    w: PtOperator,
    tol: f64,
) -> Result<SymmetryVerdict> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let psi = gauge_fix(p)?;
    let image = apply_pt(w, &psi);
    let norm = psi.norm();
    let plus = (&image - &psi)?.norm() / norm;
    let minus = (&image - &psi.scaled((-1.0).into()))?.norm() / norm;
    let verdict = if plus < tol {
        Verdict::Symmetric
    } else if minus < tol {
        Verdict::Antisymmetric
    } else {
        Verdict::Broken
    };
    Ok(SymmetryVerdict {
        operator: w,
        verdict,
        residual: plus.min(minus),
    })
}
