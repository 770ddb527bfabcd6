//! Quadratic two-mode boson operators `B = ½ Σ B_mn a†_m a_n` and their
//! tridiagonal matrices on degree-`m` homogeneous subspaces.
//!
//! In the Bargmann realisation `a†_j a_k` acts as `ζ_j ∂_k`, so on the basis
//! `f_k = ζ₁^(m-k) ζ₂^k` the number terms are diagonal and the two hopping
//! terms shift `k` by one.

use std::ops::Add;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::CDD;
use crate::CMatrix;

/// Coefficients `(B₁₁, B₂₂, B₁₂, B₂₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticBosonOperator {
    pub b11: Complex64,
    pub b22: Complex64,
    pub b12: Complex64,
    pub b21: Complex64,
}

impl QuadraticBosonOperator {
    pub fn new(b11: Complex64, b22: Complex64, b12: Complex64, b21: Complex64) -> Self {
        Self { b11, b22, b12, b21 }
    }

    /// `B(c₁, c₂, iα, iα)` with real `c₁, c₂, α`.
    pub fn pt_coupled(c1: f64, c2: f64, alpha: f64) -> Self {
        let coupling = Complex64::new(0.0, alpha);
        Self::new(c1.into(), c2.into(), coupling, coupling)
    }

    /// Real number terms and `B₂₁ = conj(B₁₂)`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.b11.im.abs() <= tol
            && self.b22.im.abs() <= tol
            && (self.b21 - self.b12.conj()).norm() <= tol
    }

    /// Matrix of the operator on the degree-`m` subspace.
    pub fn tridiagonal_rep(&self, m: usize) -> TridiagonalMatrix {
        tridiagonal_rep(self, m)
    }
}

impl Add for QuadraticBosonOperator {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            b11: self.b11 + rhs.b11,
            b22: self.b22 + rhs.b22,
            b12: self.b12 + rhs.b12,
            b21: self.b21 + rhs.b21,
        }
    }
}

/// A tridiagonal matrix stored by its three diagonals.
///
/// `sub[i]` sits at `(i + 1, i)` and `sup[i]` at `(i, i + 1)`.
///
/// Matrices built from an operator also keep the rounding error of every
/// entry, so that extended-precision stages see the exact operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalMatrix {
    diag: Vec<Complex64>,
    sub: Vec<Complex64>,
    sup: Vec<Complex64>,
    #[serde(skip)]
    tail: Option<Box<Tail>>,
}

#[derive(Debug, Clone, PartialEq)]
struct Tail {
    diag: Vec<Complex64>,
    sub: Vec<Complex64>,
    sup: Vec<Complex64>,
}

fn split_all(v: Vec<CDD>) -> (Vec<Complex64>, Vec<Complex64>) {
    v.into_iter().map(CDD::split).unzip()
}

fn join(hi: &[Complex64], lo: Option<&[Complex64]>) -> Vec<CDD> {
    match lo {
        Some(lo) => hi.iter().zip(lo).map(|(h, l)| CDD::from_parts(*h, *l)).collect(),
        None => hi.iter().map(|h| CDD::from(*h)).collect(),
    }
}

impl TridiagonalMatrix {
    /// # Panics
    ///
    /// If the off-diagonals do not have exactly `diag.len() - 1` entries or
    /// `diag` is empty.
    pub fn new(diag: Vec<Complex64>, sub: Vec<Complex64>, sup: Vec<Complex64>) -> Self {
        assert!(!diag.is_empty(), "tridiagonal matrix needs at least one row");
        assert_eq!(sub.len() + 1, diag.len(), "sub-diagonal length");
        assert_eq!(sup.len() + 1, diag.len(), "super-diagonal length");
        Self {
            diag,
            sub,
            sup,
            tail: None,
        }
    }

    fn from_extended(diag: Vec<CDD>, sub: Vec<CDD>, sup: Vec<CDD>) -> Self {
        let (diag, tdiag) = split_all(diag);
        let (sub, tsub) = split_all(sub);
        let (sup, tsup) = split_all(sup);
        let zero = Complex64::new(0.0, 0.0);
        let exact = [&tdiag, &tsub, &tsup].iter().all(|t| t.iter().all(|x| *x == zero));
        let tail = (!exact).then(|| {
            Box::new(Tail {
                diag: tdiag,
                sub: tsub,
                sup: tsup,
            })
        });
        Self { diag, sub, sup, tail }
    }

    /// Diagonals in double-double, rounding errors included.
    pub(crate) fn extended(&self) -> (Vec<CDD>, Vec<CDD>, Vec<CDD>) {
        let t = self.tail.as_deref();
        (
            join(&self.diag, t.map(|t| t.diag.as_slice())),
            join(&self.sub, t.map(|t| t.sub.as_slice())),
            join(&self.sup, t.map(|t| t.sup.as_slice())),
        )
    }

    /// Double-double matrix-vector product on the extended entries.
    pub(crate) fn apply_extended(&self, v: &[CDD]) -> Vec<CDD> {
        let n = self.size();
        assert_eq!(v.len(), n);
        let (diag, sub, sup) = self.extended();
        (0..n)
            .map(|i| {
                let mut acc = diag[i] * v[i];
                if i > 0 {
                    acc = acc + sub[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc = acc + sup[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[Complex64] {
        &self.diag
    }

    pub fn sub(&self) -> &[Complex64] {
        &self.sub
    }

    pub fn sup(&self) -> &[Complex64] {
        &self.sup
    }

    /// Index of the first vanishing super-diagonal entry, if any.
    pub fn first_zero_super(&self) -> Option<usize> {
        self.sup.iter().position(|d| *d == Complex64::new(0.0, 0.0))
    }

    /// Whether every super-diagonal entry is nonzero.
    pub fn recursion_applicable(&self) -> bool {
        self.first_zero_super().is_none()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let s = CDD::from(s);
        let mul = |v: Vec<CDD>| v.into_iter().map(|x| x * s).collect();
        let (diag, sub, sup) = self.extended();
        Self::from_extended(mul(diag), mul(sub), mul(sup))
    }

    pub fn trace(&self) -> Complex64 {
        self.diag.iter().sum()
    }

    pub fn to_dense(&self) -> CMatrix {
        let n = self.size();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = self.diag[i];
        }
        for i in 0..n - 1 {
            out[(i + 1, i)] = self.sub[i];
            out[(i, i + 1)] = self.sup[i];
        }
        out
    }

    /// Solves `(M - shift·I) x = rhs` by Gaussian elimination with partial
    /// pivoting. Exactly zero pivots are replaced by `ε·‖M‖` so the solve
    /// always succeeds, as needed for inverse iteration at an eigenvalue.
    pub fn solve_shifted(&self, shift: Complex64, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = self.size();
        assert_eq!(rhs.len(), n);
        let scale = self
            .diag
            .iter()
            .chain(&self.sub)
            .chain(&self.sup)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            .max(shift.norm());
        let tiny = Complex64::new(f64::EPSILON * scale.max(f64::MIN_POSITIVE), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut d: Vec<Complex64> = self.diag.iter().map(|x| x - shift).collect();
        let mut dl = self.sub.clone();
        let mut du = self.sup.clone();
        let mut b = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if d[i].norm() >= dl[i].norm() {
                if d[i] == zero {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                b[i + 1] = b[i + 1] - fact * b[i];
                dl[i] = zero;
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let temp = d[i + 1];
                d[i + 1] = du[i] - fact * temp;
                if i + 2 < n {
                    dl[i] = du[i + 1];
                    du[i + 1] = -fact * dl[i];
                } else {
                    dl[i] = zero;
                }
                du[i] = temp;
                let bi = b[i];
                b[i] = b[i + 1];
                b[i + 1] = bi - fact * b[i + 1];
            }
        }
        if d[n - 1] == zero {
            d[n - 1] = tiny;
        }
        let mut x = vec![zero; n];
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= du[i] * x[i + 1];
            }
            if i + 2 < n {
                acc -= dl[i] * x[i + 2];
            }
            x[i] = acc / d[i];
        }
        x
    }

    /// Matrix-vector product without densifying.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.size();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.sub[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }
}

impl Add for &TridiagonalMatrix {
    type Output = TridiagonalMatrix;

    fn add(self, rhs: Self) -> TridiagonalMatrix {
        assert_eq!(self.size(), rhs.size(), "tridiagonal sizes differ");
        let zip = |a: Vec<CDD>, b: Vec<CDD>| a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        let (ad, asub, asup) = self.extended();
        let (bd, bsub, bsup) = rhs.extended();
        TridiagonalMatrix::from_extended(zip(ad, bd), zip(asub, bsub), zip(asup, bsup))
    }
}

/// Matrix of `op` on `f_k = ζ₁^(m-k) ζ₂^k`, `k = 0..=m`, keeping the ½ prefactor.
pub fn tridiagonal_rep(op: &QuadraticBosonOperator, m: usize) -> TridiagonalMatrix {
    let [b11, b22, b12, b21] = [op.b11, op.b22, op.b12, op.b21].map(CDD::from);
    let n = |k: usize| CDD::from(k as f64 * 0.5);
    let diag = (0..=m).map(|k| b11 * n(m - k) + b22 * n(k)).collect();
    // ζ₁∂₂ f_{k+1} = (k+1) f_k ; ζ₂∂₁ f_k = (m-k) f_{k+1}
    let sup = (0..m).map(|k| b12 * n(k + 1)).collect();
    let sub = (0..m).map(|k| b21 * n(m - k)).collect();
    TridiagonalMatrix::from_extended(diag, sub, sup)
}

/// `scale(t, s)`.
pub fn scale(t: &TridiagonalMatrix, s: Complex64) -> TridiagonalMatrix {
    t.scale(s)
}
