//! Dense nonsymmetric eigensolver used as an independent oracle.
//!
//! Balancing followed by a complex Schur decomposition; eigenvectors are
//! recovered from the triangular factor by back substitution and each pair
//! is then sharpened by mixed-precision refinement against the original
//! matrix.

use nalgebra::{DVector, Schur};
use num_complex::Complex64;

use super::refine::{dense_apply, refine_eigenpair};
use super::roots::balance;
use super::{residual_of, sort_pairs, EigenPair};
use crate::boson_operator::TridiagonalMatrix;
use crate::dd::CDD;
use crate::error::{Error, Result};
use crate::CMatrix;

const SWEEPS_PER_ROW: usize = 1000;

/// Full eigendecomposition of a square complex matrix.
///
/// Pairs are sorted by `(re, im)`; each vector is gauge-fixed so that its
/// first component is one (or its largest component, when the first is
/// negligible).
pub fn dense_eigensolve(h: &CMatrix) -> Result<Vec<EigenPair>> {
    solve(h, |v| dense_apply(h, v))
}

/// Dense solve of a tridiagonal matrix; refinement uses its extended
/// entries when it was built from an operator.
pub fn dense_eigensolve_tridiagonal(t: &TridiagonalMatrix) -> Result<Vec<EigenPair>> {
    solve(&t.to_dense(), |v| t.apply_extended(v))
}

fn solve<F: Fn(&[CDD]) -> Vec<CDD>>(h: &CMatrix, apply: F) -> Result<Vec<EigenPair>> {
    let n = h.nrows();
    if n != h.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            rows: n,
            cols: h.ncols(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<Complex64>> = (0..n).map(|i| h.row(i).iter().copied().collect()).collect();
    let scaling = balance(&mut rows);
    let balanced = CMatrix::from_fn(n, n, |i, j| rows[i][j]);

    let max_iter = SWEEPS_PER_ROW * n;
    let schur = Schur::try_new(balanced, f64::EPSILON, max_iter)
        .ok_or(Error::EigenNonConvergence { max_iter })?;
    let (q, t) = schur.unpack();

    let tnorm = t.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);

    let values: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        let lambda = values[i];
        let mut y = DVector::<Complex64>::zeros(n);
        y[i] = Complex64::new(1.0, 0.0);
        for j in (0..i).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in j + 1..=i {
                acc += t[(j, k)] * y[k];
            }
            let mut den = t[(j, j)] - lambda;
            if den.norm() < smin {
                den = Complex64::new(smin, 0.0);
            }
            y[j] = -acc / den;
        }
        let mut x = &q * y;
        for (k, s) in scaling.iter().enumerate() {
            x[k] *= *s;
        }
        let gap = values
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| (v - lambda).norm())
            .fold(f64::INFINITY, f64::min);
        let (lambda, x) = refine_eigenpair(h, &apply, lambda, x.as_slice(), 0.25 * gap);
        let vector = gauge(&x);
        let residual = residual_of(h, lambda, &vector);
        pairs.push(EigenPair {
            value: lambda,
            vector,
            residual,
        });
    }
    sort_pairs(&mut pairs);
    Ok(pairs)
}

fn gauge(v: &[Complex64]) -> Vec<Complex64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return v.to_vec();
    }
    let pivot = if v[0].norm() > 1e-8 * max {
        v[0]
    } else {
        *v.iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("nonempty")
    };
    v.iter().map(|z| z / pivot).collect()
}
