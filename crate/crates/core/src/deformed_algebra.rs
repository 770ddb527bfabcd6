//! Bi-orthogonal system in `C²`, the deformed su(2) generators built from
//! it, their Jordan–Schwinger realisation on degree-`m` subspaces, ladder
//! operators with exponent `p`, Killing form and Casimir.
//!
//! Generators are realised through the identifications
//! `J₁ = B(-iα, iα, 1, 1)`, `J₂ = B(0, 0, -i, i)`, `J₃ = J₀ = B(1, -1, iα, iα)`;
//! the dyadic and coefficient-sum forms are reported as cross-checks.

use nalgebra::{Matrix2, Matrix3, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boson_operator::QuadraticBosonOperator;
use crate::error::{Error, Result};
use crate::CMatrix;

type C = Complex64;

const SINGULAR_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn pauli() -> [Matrix2<C>; 3] {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    [
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

/// Real `ω = sqrt(1 - α²)`; only defined inside the bi-orthogonal domain.
fn real_omega(alpha: f64) -> Result<f64> {
    if alpha.abs() >= 1.0 || !alpha.is_finite() {
        return Err(Error::BiorthogonalityRestriction { alpha });
    }
    Ok((1.0 - alpha * alpha).sqrt())
}

/// Which similarity `T = cos(θ/2)·1 - k·sin(θ/2)·σ₂` is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformConvention {
    /// `k = 1`: `det T = cos θ = ω`, invertible on the whole domain.
    #[default]
    Unit,
    /// `k = 2`: singular where `tan(θ/2) = ½`, i.e. at `|α| = 0.8`.
    AsPrinted,
}

impl TransformConvention {
    fn factor(self) -> f64 {
        match self {
            TransformConvention::Unit => 1.0,
            TransformConvention::AsPrinted => 2.0,
        }
    }
}

/// `φⱼ = ω T uⱼ`, `χⱼ = (T†)⁻¹ uⱼ` with `u₁ = (1, 1)/√2`, `u₂ = (1, -1)/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiorthogonalSystem {
    pub alpha: f64,
    /// `sin θ = α`, `θ ∈ (-π/2, π/2)`.
    pub theta: f64,
    pub omega: f64,
    pub convention: TransformConvention,
    pub t_matrix: Matrix2<C>,
    pub u: [Vector2<C>; 2],
    pub phi: [Vector2<C>; 2],
    pub chi: [Vector2<C>; 2],
}

impl BiorthogonalSystem {
    /// `⟨φⱼ | χₖ⟩`, conjugate-linear in the first slot.
    pub fn pairing(&self) -> Matrix2<C> {
        Matrix2::from_fn(|j, k| self.phi[j].dotc(&self.chi[k]))
    }

    /// Largest `|⟨φⱼ|χₖ⟩|` over `j ≠ k`.
    pub fn off_diagonal_defect(&self) -> f64 {
        let g = self.pairing();
        g[(0, 1)].norm().max(g[(1, 0)].norm())
    }

    /// Largest `|⟨φⱼ|χⱼ⟩ - ω|`.
    pub fn diagonal_defect(&self) -> f64 {
        let g = self.pairing();
        let w = c(self.omega, 0.0);
        (g[(0, 0)] - w).norm().max((g[(1, 1)] - w).norm())
    }
}

pub fn build_biorthogonal(alpha: f64) -> Result<BiorthogonalSystem> {
    build_biorthogonal_with(alpha, TransformConvention::Unit)
}

pub fn build_biorthogonal_with(
    alpha: f64,
    convention: TransformConvention,
) -> Result<BiorthogonalSystem> {
    let omega = real_omega(alpha)?;
    let theta = alpha.asin();
    let [_, s2, _] = pauli();
    let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let t_matrix = Matrix2::identity() * c(ch, 0.0) - s2 * c(convention.factor() * sh, 0.0);
    if t_matrix.determinant().norm() < SINGULAR_TOL {
        return Err(Error::SingularTransform { alpha });
    }
    let t_dag_inv = t_matrix
        .adjoint()
        .try_inverse()
        .ok_or(Error::SingularTransform { alpha })?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let u = [
        Vector2::new(c(r, 0.0), c(r, 0.0)),
        Vector2::new(c(r, 0.0), c(-r, 0.0)),
    ];
    let phi = u.map(|v| t_matrix * v * c(omega, 0.0));
    let chi = u.map(|v| t_dag_inv * v);
    Ok(BiorthogonalSystem {
        alpha,
        theta,
        omega,
        convention,
        t_matrix,
        u,
        phi,
        chi,
    })
}

/// Coefficient arrays `c⁽¹⁾, c⁽²⁾, c⁽³⁾` with `j, k ∈ {1, 2}`:
/// `c⁽¹⁾ⱼₖ = (-1)ʲ δⱼₖ`, `c⁽³⁾ⱼₖ = 1 - (-1)ʲ c⁽¹⁾ⱼₖ`, `c⁽²⁾ⱼₖ = (-1)ʲ c⁽³⁾ⱼₖ`.
pub fn structure_coefficients() -> [Matrix2<C>; 3] {
    let sign = |j: usize| if j % 2 == 0 { 1.0 } else { -1.0 };
    let c1 = Matrix2::from_fn(|j, k| c(if j == k { sign(j + 1) } else { 0.0 }, 0.0));
    let c3 = Matrix2::from_fn(|j, k| c(1.0, 0.0) - c1[(j, k)] * sign(j + 1));
    let c2 = Matrix2::from_fn(|j, k| c3[(j, k)] * sign(j + 1));
    [c1, c2, c3]
}

/// `σₘ = (i^{m+1}/2) Σ c⁽ᵐ⁾ⱼₖ ω^{-δ_{m2}} |φⱼ⟩⟨χₖ|`.
pub fn sigma_generators(alpha: f64) -> Result<[Matrix2<C>; 3]> {
    Ok(sigma_from_system(&build_biorthogonal(alpha)?))
}

pub fn sigma_from_system(sys: &BiorthogonalSystem) -> [Matrix2<C>; 3] {
    let coeffs = structure_coefficients();
    let mut out = [Matrix2::zeros(); 3];
    for (idx, sigma) in out.iter_mut().enumerate() {
        let m = idx as u32 + 1;
        let weight = if m == 2 { 1.0 / sys.omega } else { 1.0 };
        let prefactor = C::i().powu(m + 1) * 0.5 * weight;
        for j in 0..2 {
            for k in 0..2 {
                *sigma += sys.phi[j] * sys.chi[k].adjoint() * (coeffs[idx][(j, k)] * prefactor);
            }
        }
    }
    out
}

/// Distance of the dyadic generators from the degree-one Jordan–Schwinger
/// matrices, at `α` and at `-α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaCrossCheck {
    pub direct: [f64; 3],
    pub mirrored: [f64; 3],
}

pub fn sigma_cross_check(alpha: f64) -> Result<SigmaCrossCheck> {
    let sigma = sigma_generators(alpha)?;
    let dist = |a: f64| {
        let js = jordan_schwinger(a, 1);
        std::array::from_fn(|i| {
            let s = CMatrix::from_fn(2, 2, |r, q| sigma[i][(r, q)]);
            (s - &js[i]).norm()
        })
    };
    Ok(SigmaCrossCheck {
        direct: dist(alpha),
        mirrored: dist(-alpha),
    })
}

/// The three generators as quadratic boson operators.
pub fn generator_operators(alpha: f64) -> [QuadraticBosonOperator; 3] {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    let ia = c(0.0, alpha);
    [
        QuadraticBosonOperator::new(-ia, ia, l, l),
        QuadraticBosonOperator::new(o, o, -i, i),
        QuadraticBosonOperator::new(l, -l, ia, ia),
    ]
}

/// `J_m = (i^{m-1}/2) Σ [c⁽⁴⁻ᵐ⁾ⱼₖ + iᵐ (1 - δ_{m2}) α c⁽ᵐ⁾ⱼₖ] a†ⱼ aₖ`, as
/// operators, for comparison with [`generator_operators`].
pub fn coefficient_sum_operators(alpha: f64) -> [QuadraticBosonOperator; 3] {
    let coeffs = structure_coefficients();
    std::array::from_fn(|idx| {
        let m = idx as u32 + 1;
        let deform = if m == 2 { 0.0 } else { alpha };
        let b = coeffs[3 - m as usize] + coeffs[idx] * (C::i().powu(m) * deform);
        let b = b * C::i().powu(m - 1);
        QuadraticBosonOperator::new(b[(0, 0)], b[(1, 1)], b[(0, 1)], b[(1, 0)])
    })
}

/// `(J₁, J₂, J₃)` on the degree-`m` subspace.
pub fn jordan_schwinger(alpha: f64, m: usize) -> [CMatrix; 3] {
    generator_operators(alpha).map(|op| op.tridiagonal_rep(m).to_dense())
}

/// Generators, ladder operators and both Casimir branches at `(α, p, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraBundle {
    pub alpha: f64,
    pub p: f64,
    pub m: usize,
    pub omega: f64,
    pub j1: CMatrix,
    pub j2: CMatrix,
    pub j3: CMatrix,
    pub j_plus: CMatrix,
    pub j_minus: CMatrix,
    pub j0: CMatrix,
    pub casimir_plus: CMatrix,
    pub casimir_minus: CMatrix,
}

/// `J± = ω^{-p}(J₁ ± iω J₂)`, `J₀ = J₃`.
pub fn ladder_operators(alpha: f64, p: f64, m: usize) -> Result<AlgebraBundle> {
    if alpha.abs() >= 1.0 && p.fract() != 0.0 {
        return Err(Error::FractionalPower { alpha, p });
    }
    let omega = real_omega(alpha)?;
    let [j1, j2, j3] = jordan_schwinger(alpha, m);
    let scale = c(omega.powf(-p), 0.0);
    let iw = c(0.0, omega);
    let j_plus = (&j1 + &j2 * iw) * scale;
    let j_minus = (&j1 - &j2 * iw) * scale;
    let j0 = j3.clone();
    let (casimir_plus, casimir_minus) = casimir_branches(&j0, &j_plus, &j_minus, omega, p);
    Ok(AlgebraBundle {
        alpha,
        p,
        m,
        omega,
        j1,
        j2,
        j3,
        j_plus,
        j_minus,
        j0,
        casimir_plus,
        casimir_minus,
    })
}

fn casimir_branches(
    j0: &CMatrix,
    jp: &CMatrix,
    jm: &CMatrix,
    omega: f64,
    p: f64,
) -> (CMatrix, CMatrix) {
    let n = j0.nrows();
    let id = CMatrix::identity(n, n);
    let w = c(omega, 0.0);
    let inv_w2 = c(omega.powi(-2), 0.0);
    let cross = c(omega.powf(2.0 * p - 2.0), 0.0);
    let plus = j0 * (j0 + &id * w) * inv_w2 + jm * jp * cross;
    let minus = j0 * (j0 - &id * w) * inv_w2 + jp * jm * cross;
    (plus, minus)
}

fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Frobenius residuals of `[J₀, J±] = ±ω J±` and `[J₊, J₋] = 2ω^{1-2p} J₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorResiduals {
    pub r_plus: f64,
    pub r_minus: f64,
    pub r_pm: f64,
}

impl CommutatorResiduals {
    pub fn max(&self) -> f64 {
        self.r_plus.max(self.r_minus).max(self.r_pm)
    }
}

pub fn commutator_residuals(b: &AlgebraBundle) -> CommutatorResiduals {
    let w = c(b.omega, 0.0);
    let r_plus = (commutator(&b.j0, &b.j_plus) - &b.j_plus * w).norm();
    let r_minus = (commutator(&b.j0, &b.j_minus) + &b.j_minus * w).norm();
    let k = c(2.0 * b.omega.powf(1.0 - 2.0 * b.p), 0.0);
    let r_pm = (commutator(&b.j_plus, &b.j_minus) - &b.j0 * k).norm();
    CommutatorResiduals {
        r_plus,
        r_minus,
        r_pm,
    }
}

/// Killing form in the basis `(J₀, J₊, J₋)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KillingForm {
    pub matrix: Matrix3<C>,
}

impl KillingForm {
    pub const BASIS_ORDER: [&'static str; 3] = ["J0", "J+", "J-"];

    pub fn determinant(&self) -> C {
        self.matrix.determinant()
    }

    /// Largest entrywise distance to another form.
    pub fn max_deviation(&self, other: &KillingForm) -> f64 {
        (self.matrix - other.matrix)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Structure constants `f[a][b][c]` with `[X_a, X_b] = Σ_c f_abc X_c`.
type Structure = [[[C; 3]; 3]; 3];

fn killing_from_structure(f: &Structure) -> KillingForm {
    let ad = |a: usize| Matrix3::from_fn(|row, col| f[a][col][row]);
    let ads = [ad(0), ad(1), ad(2)];
    KillingForm {
        matrix: Matrix3::from_fn(|a, b| (ads[a] * ads[b]).trace()),
    }
}

fn analytic_structure(omega: f64, p: f64) -> Structure {
    let z = c(0.0, 0.0);
    let mut f = [[[z; 3]; 3]; 3];
    let w = c(omega, 0.0);
    let k = c(2.0 * omega.powf(1.0 - 2.0 * p), 0.0);
    f[0][1][1] = w;
    f[1][0][1] = -w;
    f[0][2][2] = -w;
    f[2][0][2] = w;
    f[1][2][0] = k;
    f[2][1][0] = -k;
    f
}

/// Killing form from the structure constants of the commutation relations.
pub fn killing_form(alpha: f64, p: f64) -> Result<KillingForm> {
    let omega = real_omega(alpha)?;
    Ok(killing_from_structure(&analytic_structure(omega, p)))
}

/// `2·[[ω², 0, 0], [0, 0, 2ω^{2-2p}], [0, 2ω^{2-2p}, 0]]`.
pub fn expected_killing_form(alpha: f64, p: f64) -> Result<KillingForm> {
    let omega = real_omega(alpha)?;
    let z = c(0.0, 0.0);
    let d = c(2.0 * omega * omega, 0.0);
    let o = c(4.0 * omega.powf(2.0 - 2.0 * p), 0.0);
    Ok(KillingForm {
        matrix: Matrix3::new(d, z, z, z, z, o, z, o, z),
    })
}

/// Killing form with structure constants fitted from the bundle's own
/// commutators by least squares onto `span{J₀, J₊, J₋}`.
pub fn killing_form_from_bundle(b: &AlgebraBundle) -> KillingForm {
    let basis = [&b.j0, &b.j_plus, &b.j_minus];
    let n = b.j0.len();
    let design = CMatrix::from_fn(n, 3, |r, col| basis[col][r]);
    let svd = design.svd(true, true);
    let z = c(0.0, 0.0);
    let mut f = [[[z; 3]; 3]; 3];
    for a in 0..3 {
        for bb in 0..3 {
            let comm = commutator(basis[a], basis[bb]);
            let rhs = CMatrix::from_column_slice(n, 1, comm.as_slice());
            let sol = svd.solve(&rhs, 1e-14).expect("SVD computed with U and V");
            for k in 0..3 {
                f[a][bb][k] = sol[k];
            }
        }
    }
    killing_from_structure(&f)
}

/// Both Casimir branches, their distance, and how far they fail to commute
/// with the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirReport {
    pub c_plus: CMatrix,
    pub c_minus: CMatrix,
    pub commutation_residual: f64,
    pub branch_gap: f64,
}

pub fn casimir(b: &AlgebraBundle) -> CasimirReport {
    let mut commutation_residual: f64 = 0.0;
    for cm in [&b.casimir_plus, &b.casimir_minus] {
        for g in [&b.j0, &b.j_plus, &b.j_minus] {
            commutation_residual = commutation_residual.max(commutator(cm, g).norm());
        }
    }
    CasimirReport {
        c_plus: b.casimir_plus.clone(),
        c_minus: b.casimir_minus.clone(),
        commutation_residual,
        branch_gap: (&b.casimir_plus - &b.casimir_minus).norm(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    fn m2(rows: [[C; 2]; 2]) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| rows[i][j])
    }

    #[test]
    fn undeformed_system_is_orthonormal() {
        let s = build_biorthogonal(0.0).unwrap();
        assert!((s.t_matrix - Matrix2::identity()).norm() < 1e-15);
        for j in 0..2 {
            assert!((s.phi[j] - s.u[j]).norm() < 1e-15);
            assert!((s.chi[j] - s.u[j]).norm() < 1e-15);
        }
    }

    #[test]
    fn biorthogonality_at_six_tenths() {
        let s = build_biorthogonal(0.6).unwrap();
        assert!(s.off_diagonal_defect() < 1e-12);
        assert!(s.diagonal_defect() < 1e-12);
        assert!((s.omega - 0.8).abs() < 1e-15);
    }

    #[test]
    fn restriction_enforced() {
        for a in [1.0, -1.0, 1.5] {
            assert_eq!(
                build_biorthogonal(a).unwrap_err(),
                Error::BiorthogonalityRestriction { alpha: a }
            );
        }
    }

    #[test]
    fn printed_transform_is_singular_at_four_fifths() {
        assert_eq!(
            build_biorthogonal_with(0.8, TransformConvention::AsPrinted).unwrap_err(),
            Error::SingularTransform { alpha: 0.8 }
        );
        let s = build_biorthogonal_with(0.6, TransformConvention::AsPrinted).unwrap();
        assert!(s.off_diagonal_defect() < 1e-12);
        assert!(build_biorthogonal(0.8).is_ok());
    }

    #[test]
    fn coefficient_parse() {
        let [c1, c2, c3] = structure_coefficients();
        let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(c1, Matrix2::new(-l, o, o, l));
        assert_eq!(c3, Matrix2::new(o, l, l, o));
        assert_eq!(c2, Matrix2::new(o, -l, l, o));
    }

    #[test]
    fn coefficient_sums_match_identifications() {
        for alpha in [0.0, 0.3, 0.6, 0.9] {
            let sums = coefficient_sum_operators(alpha);
            let ids = generator_operators(alpha);
            for (a, b) in sums.iter().zip(&ids) {
                let d = (a.b11 - b.b11).norm()
                    + (a.b22 - b.b22).norm()
                    + (a.b12 - b.b12).norm()
                    + (a.b21 - b.b21).norm();
                assert!(d < 1e-15, "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn sigma_undeformed_is_half_pauli() {
        let sigma = sigma_generators(0.0).unwrap();
        for (s, p) in sigma.iter().zip(pauli()) {
            assert!((s - p * c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn sigma_non_hermitian() {
        let sigma = sigma_generators(0.6).unwrap();
        assert!((sigma[0] - sigma[0].adjoint()).norm() > 0.1);
        assert!((sigma[1] - sigma[1].adjoint()).norm() < 1e-15);
        assert!((sigma[2] - sigma[2].adjoint()).norm() > 0.1);
    }

    #[test]
    fn sigma_matches_mirrored_generators() {
        let check = sigma_cross_check(0.6).unwrap();
        assert!(check.mirrored.iter().all(|r| *r < 1e-14), "{check:?}");
        assert!(check.direct[0] > 0.1 && check.direct[2] > 0.1);
        assert!(check.direct[1] < 1e-14);
    }

    #[test]
    fn j3_degree_one() {
        let [_, _, j3] = jordan_schwinger(0.6, 1);
        let expect = m2([[c(0.5, 0.0), c(0.0, 0.3)], [c(0.0, 0.3), c(-0.5, 0.0)]]);
        assert!(close(&j3, &expect, 1e-15));
    }

    #[test]
    fn j2_independent_of_alpha() {
        let a = &jordan_schwinger(0.1, 2)[1];
        let b = &jordan_schwinger(0.7, 2)[1];
        assert_eq!(a, b);
    }

    #[test]
    fn j_plus_degree_one() {
        let b = ladder_operators(0.6, 0.0, 1).unwrap();
        let expect = m2([[c(0.0, -0.3), c(0.9, 0.0)], [c(0.1, 0.0), c(0.0, 0.3)]]);
        assert!(close(&b.j_plus, &expect, 1e-15), "{}", b.j_plus);
    }

    #[test]
    fn ladder_exponent_scaling() {
        let b0 = ladder_operators(0.6, 0.0, 3).unwrap();
        let bh = ladder_operators(0.6, 0.5, 3).unwrap();
        let s = c(0.8f64.powf(-0.5), 0.0);
        assert!(close(&bh.j_plus, &(&b0.j_plus * s), 1e-14));
    }

    #[test]
    fn ladder_rejects_exceptional_domain() {
        assert_eq!(
            ladder_operators(1.2, 0.5, 2).unwrap_err(),
            Error::FractionalPower { alpha: 1.2, p: 0.5 }
        );
        assert_eq!(
            ladder_operators(1.0, 1.0, 2).unwrap_err(),
            Error::BiorthogonalityRestriction { alpha: 1.0 }
        );
    }

    #[test]
    fn commutators_hold() {
        for p in [0.0, 0.5, 1.0] {
            for m in 0..=8 {
                let r = commutator_residuals(&ladder_operators(0.6, p, m).unwrap());
                assert!(r.max() < 1e-12, "p={p} m={m} {r:?}");
            }
        }
        let r = commutator_residuals(&ladder_operators(0.0, 0.0, 5).unwrap());
        assert!(r.max() < 1e-14);
    }

    #[test]
    fn corrupted_ladder_detected() {
        let mut b = ladder_operators(0.6, 0.0, 3).unwrap();
        b.j_plus[(1, 2)] += c(1e-3, 0.0);
        assert!(commutator_residuals(&b).max() > 1e-4);
    }

    #[test]
    fn killing_values() {
        let g = killing_form(0.6, 0.0).unwrap();
        assert!((g.matrix[(0, 0)] - c(1.28, 0.0)).norm() < 1e-14);
        assert!((g.matrix[(1, 2)] - c(2.56, 0.0)).norm() < 1e-14);
        let g0 = killing_form(0.0, 0.0).unwrap();
        let expect = Matrix3::new(2.0, 0.0, 0.0, 0.0, 0.0, 4.0, 0.0, 4.0, 0.0).map(|x| c(x, 0.0));
        assert!((g0.matrix - expect).norm() < 1e-15);
    }

    #[test]
    fn killing_matches_expected_and_fit() {
        for p in [0.0, 0.5, 1.0] {
            for alpha in [0.1, 0.5, 0.9] {
                let g = killing_form(alpha, p).unwrap();
                let e = expected_killing_form(alpha, p).unwrap();
                assert!(g.max_deviation(&e) < 1e-12);
                let fit = killing_form_from_bundle(&ladder_operators(alpha, p, 3).unwrap());
                assert!(fit.max_deviation(&e) < 1e-10, "α={alpha} p={p}");
                let w2 = 1.0 - alpha * alpha;
                let det = -2.0 * w2 * (4.0 * w2.powf(1.0 - p)).powi(2);
                assert!((g.determinant() - c(det, 0.0)).norm() < 1e-12 * det.abs());
            }
        }
    }

    #[test]
    fn casimir_spin_half() {
        let b = ladder_operators(0.6, 0.0, 1).unwrap();
        let cas = casimir(&b);
        let expect = CMatrix::identity(2, 2) * c(0.75, 0.0);
        assert!(close(&cas.c_plus, &expect, 1e-14));
        assert!(close(&cas.c_minus, &expect, 1e-14));
        assert!(cas.branch_gap < 1e-12);
    }

    #[test]
    fn casimir_scalar_on_each_degree() {
        for m in 0..=6 {
            let b = ladder_operators(0.6, 0.5, m).unwrap();
            let cas = casimir(&b);
            let s = m as f64 / 2.0;
            let expect = CMatrix::identity(m + 1, m + 1) * c(s * (s + 1.0), 0.0);
            assert!(close(&cas.c_plus, &expect, 1e-11), "m={m}");
            assert!(cas.commutation_residual < 1e-10);
        }
    }

    #[test]
    fn non_hermiticity_markers() {
        let b = ladder_operators(0.4, 0.0, 3).unwrap();
        assert!((&b.j0 - b.j0.adjoint()).norm() > 0.0);
        assert!((b.j_plus.adjoint() - &b.j_minus).norm() > 0.0);
    }
}
