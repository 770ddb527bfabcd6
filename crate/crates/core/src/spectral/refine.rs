//! Mixed-precision iterative refinement of a computed eigenpair.
//!
//! Residuals `A x - λ x` are accumulated in double-double; corrections come
//! from the bordered system `[(A - λI) with column s replaced by -x] y = -r`,
//! solved in working precision, where `s` indexes the pinned component
//! `x_s = 1`. Ill-conditioned eigenvalues converge to accuracy limited by
//! the extended residual rather than by `κ·ε`.

use num_complex::Complex64;

use crate::dd::CDD;
use crate::CMatrix;

const MAX_STEPS: usize = 12;

/// Double-double product with a dense working-precision matrix.
pub(crate) fn dense_apply(a: &CMatrix, x: &[CDD]) -> Vec<CDD> {
    (0..x.len())
        .map(|i| {
            let mut acc = CDD::ZERO;
            for (j, xj) in x.iter().enumerate() {
                let aij = a[(i, j)];
                if aij != Complex64::new(0.0, 0.0) {
                    acc = acc + CDD::from(aij) * *xj;
                }
            }
            acc
        })
        .collect()
}

fn residual<F: Fn(&[CDD]) -> Vec<CDD>>(apply: &F, lambda: CDD, x: &[CDD]) -> Vec<CDD> {
    apply(x)
        .into_iter()
        .zip(x)
        .map(|(ax, xi)| ax - lambda * *xi)
        .collect()
}

fn norm(v: &[CDD]) -> f64 {
    v.iter().map(|z| z.to_c64().norm_sqr()).sum::<f64>().sqrt()
}

/// Refines `(λ, x)` as an eigenpair of the operator `apply`, whose
/// working-precision matrix is `a`; returns the refined pair with `x`
/// scaled so that its largest component is one. Iteration stops once the
/// corrections stop contracting or `λ` would leave the disc of radius
/// `max_move` around its starting value.
pub(crate) fn refine_eigenpair<F: Fn(&[CDD]) -> Vec<CDD>>(
    a: &CMatrix,
    apply: F,
    lambda: Complex64,
    x: &[Complex64],
    max_move: f64,
) -> (Complex64, Vec<Complex64>) {
    let n = x.len();
    let s = (0..n)
        .max_by(|&i, &j| x[i].norm().total_cmp(&x[j].norm()))
        .expect("nonempty vector");
    if x[s].norm() == 0.0 {
        return (lambda, x.to_vec());
    }
    let pivot = x[s];
    let mut xv: Vec<CDD> = x.iter().map(|z| CDD::from(z / pivot)).collect();
    xv[s] = CDD::from(Complex64::new(1.0, 0.0));
    let mut lam = CDD::from(lambda);
    let mut r = residual(&apply, lam, &xv);
    let mut last_step = f64::INFINITY;

    for _ in 0..MAX_STEPS {
        if norm(&r) == 0.0 {
            break;
        }
        let lam64 = lam.to_c64();
        let mut border = a.clone();
        for i in 0..n {
            border[(i, i)] -= lam64;
        }
        for i in 0..n {
            border[(i, s)] = -xv[i].to_c64();
        }
        let rhs = nalgebra::DVector::from_iterator(n, r.iter().map(|z| -z.to_c64()));
        let Some(y) = border.lu().solve(&rhs) else {
            break;
        };
        let step = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(step < last_step) {
            break;
        }
        let next_lam = lam + CDD::from(y[s]);
        if (next_lam.to_c64() - lambda).norm() > max_move {
            break;
        }
        lam = next_lam;
        for (i, xi) in xv.iter_mut().enumerate() {
            if i != s {
                *xi = *xi + CDD::from(y[i]);
            }
        }
        r = residual(&apply, lam, &xv);
        last_step = step;
    }
    (lam.to_c64(), xv.iter().map(|z| z.to_c64()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharpens_perturbed_pair() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let a = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.6), c(0.0, 0.6), c(-1.0, 0.0)]);
        let (lam, x) = refine_eigenpair(&a, |v| dense_apply(&a, v), c(0.8 + 1e-6, 1e-7), &[c(1.0, 0.0), c(0.0, 0.33)], 0.1);
        assert!((lam - c(0.8, 0.0)).norm() < 1e-15);
        assert!((x[1] - c(0.0, 1.0 / 3.0)).norm() < 1e-15);
    }
}
