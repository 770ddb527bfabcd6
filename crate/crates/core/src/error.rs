use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inhomogeneous pairing: degree {left} against degree {right}")]
    InhomogeneousPairing { left: usize, right: usize },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("polynomial needs {expected} coefficients for its degree, got {found}")]
    CoefficientCount { expected: usize, found: usize },

    #[error("cannot gauge-fix: leading coefficient vanishes")]
    CannotGaugeFix,

    #[error("the zero polynomial is not a valid state")]
    ZeroPolynomial,

    #[error("dimension mismatch: expected {expected}x{expected}, found {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("conjugation with nonzero shift (eta = {eta}) leaves the polynomial subspace")]
    ShiftedConjugation { eta: Complex64 },

    #[error("invalid conjugation parameters")]
    InvalidConjugation,

    #[error("three-term recursion inapplicable: super-diagonal entry {index} is zero")]
    RecursionInapplicable { index: usize },

    #[error("root finder did not converge after {iterations} iterations ({} roots found)", found.len())]
    RootFinding {
        iterations: usize,
        found: Vec<Complex64>,
    },

    #[error("dense eigensolver did not converge within {max_iter} iterations")]
    EigenNonConvergence { max_iter: usize },

    #[error("bi-orthogonality restriction violated: |alpha| = {alpha} must be < 1")]
    BiorthogonalityRestriction { alpha: f64 },

    #[error("fractional power of non-positive omega (alpha = {alpha}, p = {p})")]
    FractionalPower { alpha: f64, p: f64 },

    #[error("transform T is singular at alpha = {alpha}")]
    SingularTransform { alpha: f64 },

    #[error("eigenpair residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Whether the error reports a parameter outside the domain of the
    /// deformed algebra rather than a numerical failure.
    pub fn is_domain_violation(&self) -> bool {
        matches!(
            self,
            Error::BiorthogonalityRestriction { .. }
                | Error::FractionalPower { .. }
                | Error::SingularTransform { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
