//! Polynomial roots from the eigenvalues of a balanced companion matrix.
//!
//! The companion matrix is already upper Hessenberg, so the eigenvalues are
//! found with a single-shift complex QR iteration (Wilkinson shifts, Givens
//! rotations, deflation on small subdiagonal entries).

use num_complex::Complex64;

use crate::error::{Error, Result};

const ITERS_PER_ROOT: usize = 60;

type Mat = Vec<Vec<Complex64>>;

fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Roots of `Σ coeffs[j] λ^j` with multiplicity.
///
/// Exactly-vanishing low-order coefficients are deflated as exact zero roots
/// before the companion matrix is formed.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let top = match coeffs.iter().rposition(|c| *c != zero) {
        Some(top) => top,
        None => return Ok(Vec::new()),
    };
    let low = coeffs.iter().position(|c| *c != zero).unwrap_or(0);
    let mut roots = vec![zero; low];
    let trimmed = &coeffs[low..=top];
    let degree = trimmed.len() - 1;
    match degree {
        0 => {}
        1 => roots.push(-trimmed[0] / trimmed[1]),
        _ => {
            let lead = trimmed[degree];
            let mut h: Mat = vec![vec![zero; degree]; degree];
            for j in 0..degree {
                h[0][j] = -trimmed[degree - 1 - j] / lead;
            }
            for i in 1..degree {
                h[i][i - 1] = Complex64::new(1.0, 0.0);
            }
            balance(&mut h);
            match hessenberg_eigenvalues(&mut h) {
                Ok(found) => roots.extend(found),
                Err(Error::RootFinding { iterations, found }) => {
                    roots.extend(found);
                    return Err(Error::RootFinding {
                        iterations,
                        found: roots,
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(roots)
}

/// Parlett–Reinsch diagonal balancing with radix 2, in place.
///
/// Returns the diagonal `D` of the similarity `H ← D⁻¹ H D`, which
/// preserves the Hessenberg shape.
pub(crate) fn balance(h: &mut Mat) -> Vec<f64> {
    let n = h.len();
    let mut scaling = vec![1.0; n];
    const RADIX: f64 = 2.0;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += abs1(h[j][i]);
                    row += abs1(h[i][j]);
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let sum = col + row;
            let mut f = 1.0;
            let mut g = row / RADIX;
            while col < g {
                f *= RADIX;
                col *= RADIX * RADIX;
            }
            g = row * RADIX;
            while col > g {
                f /= RADIX;
                col /= RADIX * RADIX;
            }
            if (col + row) / f < 0.95 * sum {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    h[i][j] *= inv;
                }
                for j in 0..n {
                    h[j][i] *= f;
                }
                scaling[i] *= f;
            }
        }
    }
    scaling
}

/// Complex Givens rotation `(c, s)` with real `c` such that
/// `[c s; -conj(s) c] · [a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b == Complex64::new(0.0, 0.0) {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let an = a.norm();
    let r = an.hypot(b.norm());
    if an == 0.0 {
        return (0.0, b.conj() / b.norm());
    }
    (an / r, (a / an) * b.conj() / r)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let (l1, l2) = (half_tr + root, half_tr - root);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues of an upper Hessenberg matrix; `h` is overwritten.
pub(crate) fn hessenberg_eigenvalues(h: &mut Mat) -> Result<Vec<Complex64>> {
    let n = h.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut eigs = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eigs);
    }
    let norm: f64 = h.iter().flatten().map(|z| abs1(*z)).sum();
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            eigs.push(h[0][0]);
            break;
        }
        // locate the start of the active unreduced block
        let mut l = hi;
        while l > 0 {
            let mut scale = abs1(h[l][l]) + abs1(h[l - 1][l - 1]);
            if scale == 0.0 {
                scale = norm;
            }
            if abs1(h[l][l - 1]) <= eps * scale {
                h[l][l - 1] = zero;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eigs.push(h[hi][hi]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > ITERS_PER_ROOT {
            return Err(Error::RootFinding {
                iterations: total,
                found: eigs,
            });
        }
        let shift = if iter % 11 == 0 {
            // exceptional shift to break cycles
            h[hi][hi] + abs1(h[hi][hi - 1]) * 0.75
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        for i in l..=hi {
            h[i][i] -= shift;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = x * c + s * y;
                h[k + 1][j] = -s.conj() * x + y * c;
            }
            rots.push((k, c, s));
        }
        for (k, c, s) in rots {
            let last = (k + 2).min(hi);
            for row in h.iter_mut().take(last + 1).skip(l) {
                let x = row[k];
                let y = row[k + 1];
                row[k] = x * c + y * s.conj();
                row[k + 1] = -s * x + y * c;
            }
        }
        for i in l..=hi {
            h[i][i] += shift;
        }
    }
    Ok(eigs)
}
