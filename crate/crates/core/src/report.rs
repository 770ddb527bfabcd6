//! Serializable reports: spectra, symmetry tables, eigenfunctions, algebra
//! checks and α scans. Floating-point fields are rounded to
//! [`SIGNIFICANT_DIGITS`] so output is deterministic.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boson_operator::{QuadraticBosonOperator, TridiagonalMatrix};
use crate::conjugation::{classify_symmetry, PtOperator, Verdict};
use crate::deformed_algebra::{
    casimir, commutator_residuals, expected_killing_form, killing_form, killing_form_from_bundle,
    ladder_operators, sigma_cross_check, CommutatorResiduals, SigmaCrossCheck,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fock_poly::{gauge_fix, normalize_leading, HomogeneousPolynomial};
use crate::spectral::{
    closed_form_spectrum, default_cluster_tol, dense_eigensolve_tridiagonal,
    detect_exceptional_point, doubled_j0, eigenpairs, match_spectra, EigenPair, Route,
};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits; `-0.0` becomes `0.0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue {
            re: round_sig(z.re),
            im: round_sig(z.im),
        }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

fn values(pairs: &[EigenPair]) -> Vec<Complex64> {
    pairs.iter().map(|p| p.value).collect()
}

fn rounded(v: &[Complex64]) -> Vec<ComplexValue> {
    v.iter().map(|z| (*z).into()).collect()
}

fn max_residual(pairs: &[EigenPair]) -> f64 {
    pairs.iter().map(|p| p.residual).fold(0.0, f64::max)
}

/// `2·B(c₁, c₂, iα, iα)` on degree `m`; equals `𝒜 = 2J₀` for `(c₁, c₂) = (1, -1)`.
pub fn doubled_operator(c1: f64, c2: f64, alpha: f64, m: usize) -> TridiagonalMatrix {
    QuadraticBosonOperator::pt_coupled(c1, c2, alpha)
        .tridiagonal_rep(m)
        .scale(Complex64::new(2.0, 0.0))
}

fn phase_note(alpha: f64) -> Option<String> {
    let a = alpha.abs();
    if a == 1.0 {
        Some("exceptional point: |alpha| = 1, eigenvalues coalesce".to_string())
    } else if a > 1.0 {
        Some("phase transition: |alpha| > 1, spectrum is no longer real".to_string())
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub c1: f64,
    pub c2: f64,
    pub alpha: f64,
    pub m: usize,
    pub route: Route,
    pub eigenvalues: Vec<ComplexValue>,
    pub oracle: Vec<ComplexValue>,
    pub oracle_gap: f64,
    pub max_residual: f64,
    pub closed_form: Option<Vec<ComplexValue>>,
    pub closed_form_gap: Option<f64>,
    pub note: Option<String>,
}

pub fn spectrum_report(c1: f64, c2: f64, alpha: f64, m: usize) -> Result<SpectrumReport> {
    let t = doubled_operator(c1, c2, alpha, m);
    let (pairs, route) = eigenpairs(&t)?;
    let oracle = dense_eigensolve_tridiagonal(&t)?;
    let (ev, ov) = (values(&pairs), values(&oracle));
    let closed = (c1 == 1.0 && c2 == -1.0).then(|| closed_form_spectrum(m, alpha));
    let closed_form_gap = closed.as_ref().map(|cf| round_sig(match_spectra(&ev, cf)));
    Ok(SpectrumReport {
        c1,
        c2,
        alpha,
        m,
        route,
        eigenvalues: rounded(&ev),
        oracle: rounded(&ov),
        oracle_gap: round_sig(match_spectra(&ev, &ov)),
        max_residual: round_sig(max_residual(&pairs).max(max_residual(&oracle))),
        closed_form: closed.map(|cf| {
            let mut cf = cf;
            crate::spectral::sort_spectrum(&mut cf);
            rounded(&cf)
        }),
        closed_form_gap,
        note: phase_note(alpha),
    })
}

/// Eigenvector as a polynomial, unit leading coefficient when possible.
fn eigenfunction(pair: &EigenPair) -> Result<(HomogeneousPolynomial, Gauge)> {
    let p = HomogeneousPolynomial::new(pair.vector.clone())?;
    match normalize_leading(&p) {
        Ok(q) => Ok((q, Gauge::Leading)),
        Err(Error::CannotGaugeFix) => Ok((gauge_fix(&p)?, Gauge::MaxModulus)),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gauge {
    Leading,
    MaxModulus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub operator: String,
    pub verdict: Verdict,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryRow {
    pub eigenvalue: ComplexValue,
    pub verdicts: Vec<VerdictEntry>,
}

impl SymmetryRow {
    pub fn verdict(&self, operator: PtOperator) -> Option<Verdict> {
        self.verdicts
            .iter()
            .find(|v| v.operator == operator.name())
            .map(|v| v.verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub alpha: f64,
    pub m: usize,
    pub tolerance: f64,
    pub rows: Vec<SymmetryRow>,
    pub note: Option<String>,
}

pub const CLASSIFIED_OPERATORS: [PtOperator; 3] =
    [PtOperator::Partial1, PtOperator::Partial2, PtOperator::Global];

fn symmetry_rows(pairs: &[EigenPair], tol: f64) -> Result<Vec<SymmetryRow>> {
    pairs
        .iter()
        .map(|pair| {
            let (psi, _) = eigenfunction(pair)?;
            let verdicts = CLASSIFIED_OPERATORS
                .iter()
                .map(|w| {
                    classify_symmetry(&psi, *w, tol).map(|v| VerdictEntry {
                        operator: w.name().to_string(),
                        verdict: v.verdict,
                        residual: round_sig(v.residual),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SymmetryRow {
                eigenvalue: pair.value.into(),
                verdicts,
            })
        })
        .collect()
}

/// Verdicts of every eigenfunction of `𝒜` under the partial and global PT
/// operators.
pub fn symmetry_report(alpha: f64, m: usize, tol: f64) -> Result<SymmetryReport> {
    let (pairs, _) = eigenpairs(&doubled_j0(alpha, m))?;
    Ok(SymmetryReport {
        alpha,
        m,
        tolerance: tol,
        rows: symmetry_rows(&pairs, tol)?,
        note: phase_note(alpha),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionEntry {
    pub eigenvalue: ComplexValue,
    pub gauge: Gauge,
    pub coeffs: Vec<ComplexValue>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionReport {
    pub alpha: f64,
    pub m: usize,
    pub functions: Vec<EigenfunctionEntry>,
}

/// Gauge-fixed eigenfunctions `Σ v_k ζ₁^(m-k) ζ₂^k` of `𝒜`.
pub fn eigenfunction_report(alpha: f64, m: usize) -> Result<EigenfunctionReport> {
    let (pairs, _) = eigenpairs(&doubled_j0(alpha, m))?;
    let functions = pairs
        .iter()
        .map(|pair| {
            let (psi, gauge) = eigenfunction(pair)?;
            Ok(EigenfunctionEntry {
                eigenvalue: pair.value.into(),
                gauge,
                coeffs: rounded(psi.coeffs()),
                residual: round_sig(pair.residual),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenfunctionReport {
        alpha,
        m,
        functions,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CasimirSummary {
    pub branch_gap: f64,
    pub commutation_residual: f64,
    /// Common diagonal value when both branches are scalar matrices.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub alpha: f64,
    pub p: f64,
    pub m: usize,
    pub omega: f64,
    pub undeformed: bool,
    pub tolerance: f64,
    pub commutators: CommutatorResiduals,
    pub killing: [[f64; 3]; 3],
    pub killing_deviation: f64,
    pub killing_fit_deviation: f64,
    pub casimir: CasimirSummary,
    pub spectrum_gap: f64,
    pub sigma_cross_check: SigmaCrossCheck,
    pub passed: bool,
}

impl AlgebraReport {
    /// Largest of the residuals that decide `passed`.
    pub fn worst_residual(&self) -> f64 {
        [
            self.commutators.max(),
            self.killing_deviation,
            self.killing_fit_deviation,
            self.casimir.branch_gap,
            self.casimir.commutation_residual,
            self.spectrum_gap,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Commutators, Killing form, Casimir and spectrum of `2J₀` at `(α, p, m)`.
/// Fails with a domain error for `|α| ≥ 1`.
pub fn algebra_report(alpha: f64, p: f64, m: usize, tol: f64) -> Result<AlgebraReport> {
    let bundle = ladder_operators(alpha, p, m)?;
    let commutators = commutator_residuals(&bundle);
    let g = killing_form(alpha, p)?;
    let expected = expected_killing_form(alpha, p)?;
    let fit = killing_form_from_bundle(&bundle);
    let cas = casimir(&bundle);
    let n = m + 1;
    let scalar = cas.c_plus[(0, 0)];
    let off_scalar = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).all(|(i, j)| {
        let target = if i == j { scalar } else { Complex64::new(0.0, 0.0) };
        (cas.c_plus[(i, j)] - target).norm() < tol && (cas.c_minus[(i, j)] - target).norm() < tol
    });
    let (pairs, _) = eigenpairs(&doubled_j0(alpha, m))?;
    let spectrum_gap = match_spectra(&values(&pairs), &closed_form_spectrum(m, alpha));
    let mut report = AlgebraReport {
        alpha,
        p,
        m,
        omega: round_sig(bundle.omega),
        undeformed: alpha == 0.0,
        tolerance: tol,
        commutators: CommutatorResiduals {
            r_plus: round_sig(commutators.r_plus),
            r_minus: round_sig(commutators.r_minus),
            r_pm: round_sig(commutators.r_pm),
        },
        killing: std::array::from_fn(|i| std::array::from_fn(|j| round_sig(g.matrix[(i, j)].re))),
        killing_deviation: round_sig(g.max_deviation(&expected)),
        killing_fit_deviation: round_sig(fit.max_deviation(&expected)),
        casimir: CasimirSummary {
            branch_gap: round_sig(cas.branch_gap),
            commutation_residual: round_sig(cas.commutation_residual),
            value: off_scalar.then(|| round_sig(scalar.re)),
        },
        spectrum_gap: round_sig(spectrum_gap),
        sigma_cross_check: {
            let s = sigma_cross_check(alpha)?;
            SigmaCrossCheck {
                direct: s.direct.map(round_sig),
                mirrored: s.mirrored.map(round_sig),
            }
        },
        passed: false,
    };
    report.passed = report.worst_residual() < tol;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl AlphaGrid {
    /// Evenly spaced points, rounded like every other reported value.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![round_sig(self.start)];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| round_sig(self.start + step * k as f64))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub eigen: f64,
    pub symmetry: f64,
    pub algebra: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigen: 1e-8,
            symmetry: crate::conjugation::DEFAULT_SYMMETRY_TOL,
            algebra: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub m_values: Vec<usize>,
    pub alpha_grid: AlphaGrid,
    #[serde(default)]
    pub p: f64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output_format: OutputFormat,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.m_values.is_empty() {
            return bad("m_values is empty");
        }
        if let Some(m) = self.m_values.iter().find(|m| **m > crate::fock_poly::MAX_DEGREE) {
            return Err(Error::InvalidConfig(format!(
                "degree {m} exceeds {}",
                crate::fock_poly::MAX_DEGREE
            )));
        }
        let g = &self.alpha_grid;
        if g.count == 0 {
            return bad("alpha_grid.count must be at least 1");
        }
        if !(g.start.is_finite() && g.stop.is_finite()) || g.start > g.stop {
            return bad("alpha_grid needs finite start <= stop");
        }
        if !self.p.is_finite() {
            return bad("p must be finite");
        }
        let t = &self.tolerances;
        if [t.eigen, t.symmetry, t.algebra]
            .iter()
            .any(|x| !(x.is_finite() && *x > 0.0))
        {
            return bad("tolerances must be positive");
        }
        Ok(())
    }

    /// Degrees in ascending order without repeats.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ms = self.m_values.clone();
        ms.sort_unstable();
        ms.dedup();
        ms
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerdictTriple {
    pub partial1: Verdict,
    pub partial2: Verdict,
    pub global: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraResiduals {
    pub commutator: f64,
    pub killing: f64,
    pub casimir: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub alpha: f64,
    pub m: usize,
    pub route: Route,
    pub eigenvalues: Vec<ComplexValue>,
    pub max_imag: f64,
    pub max_residual: f64,
    pub symmetry_summary: Vec<VerdictTriple>,
    pub ep_flag: bool,
    pub max_pairwise_gap: f64,
    pub cluster_tolerance: f64,
    /// Absent outside the bi-orthogonal domain `|α| < 1`.
    pub residuals: Option<AlgebraResiduals>,
}

/// One grid point of a scan.
pub fn scan_point(alpha: f64, m: usize, p: f64, tol: &Tolerances) -> Result<ScanRecord> {
    let t = doubled_j0(alpha, m);
    let (pairs, route) = eigenpairs(&t)?;
    let residual = max_residual(&pairs);
    if !(residual < tol.eigen) {
        return Err(Error::ResidualTooLarge {
            residual,
            tol: tol.eigen,
        });
    }
    let rows = symmetry_rows(&pairs, tol.symmetry)?;
    let symmetry_summary = rows
        .iter()
        .map(|r| VerdictTriple {
            partial1: r.verdict(PtOperator::Partial1).expect("classified"),
            partial2: r.verdict(PtOperator::Partial2).expect("classified"),
            global: r.verdict(PtOperator::Global).expect("classified"),
        })
        .collect();
    let cluster_tolerance = default_cluster_tol(&t);
    let ep = detect_exceptional_point(&t, cluster_tolerance);
    let ep_flag = ep.is_exceptional() && ep.max_pairwise_gap < cluster_tolerance;
    let residuals = if alpha.abs() < 1.0 {
        let b = ladder_operators(alpha, p, m)?;
        let cas = casimir(&b);
        let g = killing_form(alpha, p)?;
        Some(AlgebraResiduals {
            commutator: round_sig(commutator_residuals(&b).max()),
            killing: round_sig(g.max_deviation(&expected_killing_form(alpha, p)?)),
            casimir: round_sig(cas.branch_gap.max(cas.commutation_residual)),
        })
    } else {
        None
    };
    let eigenvalues = rounded(&values(&pairs));
    let max_imag = eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(ScanRecord {
        alpha,
        m,
        route,
        eigenvalues,
        max_imag,
        max_residual: round_sig(residual),
        symmetry_summary,
        ep_flag,
        max_pairwise_gap: round_sig(ep.max_pairwise_gap),
        cluster_tolerance: round_sig(cluster_tolerance),
        residuals,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummaryEntry {
    pub m: usize,
    /// First α on the grid whose spectrum has `|Im λ|` above the tolerance.
    pub first_complex_alpha: Option<f64>,
    pub ep_alphas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub records: usize,
    pub tolerance: f64,
    pub entries: Vec<ScanSummaryEntry>,
}

/// Recomputes the summary from records alone.
pub fn summarize(records: &[ScanRecord], tol: f64) -> ScanSummary {
    let mut ms: Vec<usize> = records.iter().map(|r| r.m).collect();
    ms.sort_unstable();
    ms.dedup();
    let entries = ms
        .into_iter()
        .map(|m| {
            let mut rs: Vec<&ScanRecord> = records.iter().filter(|r| r.m == m).collect();
            rs.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
            ScanSummaryEntry {
                m,
                first_complex_alpha: rs.iter().find(|r| r.max_imag > tol).map(|r| r.alpha),
                ep_alphas: rs.iter().filter(|r| r.ep_flag).map(|r| r.alpha).collect(),
            }
        })
        .collect();
    ScanSummary {
        records: records.len(),
        tolerance: tol,
        entries,
    }
}

/// One line of JSON Lines scan output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScanLine {
    Record(ScanRecord),
    Summary(ScanSummary),
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error(transparent)]
    Config(Error),
    #[error("alpha = {alpha}, m = {m}: {source}")]
    Numerical { alpha: f64, m: usize, source: Error },
    #[error("writing scan output: {0}")]
    Io(#[from] std::io::Error),
}

/// Runs the grid degree by degree, each degree's α points concurrently
/// under `exec`, handing records to `sink` in `(m, α)` order as soon as a
/// degree is complete.
pub fn run_scan<F>(config: &ScanConfig, exec: Execution, mut sink: F) -> std::result::Result<ScanSummary, ScanError>
where
    F: FnMut(&ScanRecord) -> std::io::Result<()>,
{
    config.validate().map_err(ScanError::Config)?;
    let alphas = config.alpha_grid.points();
    let mut all = Vec::new();
    for m in config.degrees() {
        let batch = exec.map(&alphas, |&alpha| {
            scan_point(alpha, m, config.p, &config.tolerances)
                .map_err(|source| ScanError::Numerical { alpha, m, source })
        });
        for record in batch {
            let record = record?;
            sink(&record)?;
            all.push(record);
        }
    }
    Ok(summarize(&all, config.tolerances.eigen))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(1.0000000000000002), 1.0);
        assert_eq!(round_sig(123456789.0123456), 123456789.012);
    }

    #[test]
    fn grid_points() {
        let g = AlphaGrid {
            start: 0.9,
            stop: 1.1,
            count: 21,
        };
        let pts = g.points();
        assert_eq!(pts.len(), 21);
        assert_eq!(pts[10], 1.0);
        assert_eq!(pts[1], 0.91);
    }

    #[test]
    fn spectrum_example() {
        let r = spectrum_report(1.0, -1.0, 0.6, 2).unwrap();
        let re: Vec<f64> = r.eigenvalues.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![-1.6, 0.0, 1.6]);
        assert!(r.closed_form_gap.unwrap() < 1e-12);
        assert!(r.note.is_none());
        let r = spectrum_report(1.0, -1.0, 1.25, 1).unwrap();
        assert!(r.note.is_some());
        let low = Complex64::from(r.eigenvalues[0]);
        assert!((low - Complex64::new(0.0, -0.75)).norm() < 1e-12);
    }

    #[test]
    fn symmetry_examples() {
        let odd = symmetry_report(0.6, 3, 1e-9).unwrap();
        for row in &odd.rows {
            assert_eq!(row.verdict(PtOperator::Partial1), Some(Verdict::Antisymmetric));
            assert_eq!(row.verdict(PtOperator::Partial2), Some(Verdict::Symmetric));
        }
        let even = symmetry_report(0.6, 2, 1e-9).unwrap();
        for row in &even.rows {
            assert_eq!(row.verdict(PtOperator::Partial1), Some(Verdict::Symmetric));
            assert_eq!(row.verdict(PtOperator::Partial2), Some(Verdict::Symmetric));
        }
        let broken = symmetry_report(1.5, 2, 1e-9).unwrap();
        for row in broken.rows.iter().filter(|r| r.eigenvalue.im.abs() > 1e-8) {
            assert_eq!(row.verdict(PtOperator::Partial1), Some(Verdict::Broken));
            assert_eq!(row.verdict(PtOperator::Partial2), Some(Verdict::Broken));
        }
    }

    #[test]
    fn algebra_passes_and_rejects() {
        let r = algebra_report(0.6, 0.0, 4, 1e-10).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.casimir.value, Some(6.0));
        let u = algebra_report(0.0, 0.0, 1, 1e-10).unwrap();
        assert!(u.undeformed && u.passed);
        assert!(algebra_report(1.0, 0.0, 2, 1e-10).unwrap_err().is_domain_violation());
    }

    #[test]
    fn scan_through_exceptional_point() {
        let config = ScanConfig {
            m_values: vec![2],
            alpha_grid: AlphaGrid {
                start: 0.9,
                stop: 1.1,
                count: 21,
            },
            p: 0.0,
            tolerances: Tolerances::default(),
            output_format: OutputFormat::Json,
        };
        let mut records = Vec::new();
        let summary = run_scan(&config, Execution::Parallel, |r| {
            records.push(r.clone());
            Ok(())
        })
        .unwrap();
        assert_eq!(records.len(), 21);
        for r in &records {
            if r.alpha < 1.0 {
                assert!(r.max_imag < 1e-12, "{r:?}");
                assert!(!r.ep_flag);
            } else if r.alpha > 1.0 {
                assert!(r.max_imag > 0.0 && !r.ep_flag);
            } else {
                assert!(r.ep_flag);
            }
        }
        let e = &summary.entries[0];
        assert_eq!(e.first_complex_alpha, Some(1.01));
        assert_eq!(e.ep_alphas, vec![1.0]);
    }

    #[test]
    fn summary_round_trips_through_json() {
        let config = ScanConfig {
            m_values: vec![3, 1],
            alpha_grid: AlphaGrid {
                start: 0.5,
                stop: 1.5,
                count: 5,
            },
            p: 0.5,
            tolerances: Tolerances::default(),
            output_format: OutputFormat::Json,
        };
        let mut lines = Vec::new();
        let summary = run_scan(&config, Execution::Sequential, |r| {
            lines.push(serde_json::to_string(&ScanLine::Record(r.clone())).unwrap());
            Ok(())
        })
        .unwrap();
        let parsed: Vec<ScanRecord> = lines
            .iter()
            .map(|l| match serde_json::from_str(l).unwrap() {
                ScanLine::Record(r) => r,
                ScanLine::Summary(_) => panic!("unexpected summary"),
            })
            .collect();
        assert_eq!(parsed[0].m, 1);
        assert_eq!(summarize(&parsed, config.tolerances.eigen), summary);
    }

    #[test]
    fn config_validation() {
        let mut config = ScanConfig {
            m_values: vec![],
            alpha_grid: AlphaGrid {
                start: 0.0,
                stop: 1.0,
                count: 3,
            },
            p: 0.0,
            tolerances: Tolerances::default(),
            output_format: OutputFormat::Csv,
        };
        assert!(config.validate().is_err());
        config.m_values = vec![2];
        assert!(config.validate().is_ok());
        config.alpha_grid.start = 2.0;
        assert!(config.validate().is_err());
        config.alpha_grid.start = 0.0;
        config.tolerances.eigen = 0.0;
        assert!(config.validate().is_err());
    }
}
