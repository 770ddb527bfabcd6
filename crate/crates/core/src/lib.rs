//! Spectral analysis of non-Hermitian quadratic two-mode boson operators on
//! Fock space: tridiagonal representations on homogeneous subspaces,
//! three-term-recursion eigensolver, partial/global PT symmetry checks,
//! exceptional-point detection and the deformed su(2) algebra built from a
//! bi-orthogonal system.

pub mod boson_operator;
pub mod conjugation;
mod dd;
pub mod deformed_algebra;
pub mod error;
pub mod exec;
pub mod fock_poly;
pub mod report;
pub mod spectral;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use error::{Error, Result};

/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;
