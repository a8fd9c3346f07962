//! Tensorial Schur products, block matrices over matrix algebras, Choi
//! matrices and completely positive maps, with numerical positivity
//! certificates.
//!
//! All algebras are concrete full matrix algebras `M_m(ℂ)`. Matrices carry
//! complex entries `Complex<T>`; structural operations accept any exact
//! [`Scalar`] (including [`Rational`]), and spectral operations need a
//! floating point [`Real`]. The aliases below fix the usual choices.
//!
//! Conventions: indices are 0-based, composite indices are outer-major
//! (see [`index::IndexMap`]), and Kronecker products put the left factor
//! outer.

pub mod block;
pub mod campaign;
pub mod cpmaps;
pub mod error;
pub mod index;
pub mod linalg;
pub mod randgen;
pub mod scalar;
pub mod schur;

pub use block::{BlockGrid, BlockMatrix};
pub use cpmaps::{Counterexample, KrausSet, MatLinearMap};
pub use error::{Error, Result};
pub use linalg::{Matrix, PsdReport, PsdTolerance};
pub use randgen::Seed;
pub use scalar::{Rational, Real, Scalar};

/// Double-precision complex matrix.
pub type CMatrix = Matrix<f64>;
/// Single-precision complex matrix.
pub type CMatrix32 = Matrix<f32>;
/// Exact Gaussian-rational matrix.
pub type QMatrix = Matrix<Rational>;
/// Double-precision element of `M_n(M_m)`.
pub type CBlockMatrix = BlockMatrix<f64>;
/// Exact element of `M_n(M_m)`.
pub type QBlockMatrix = BlockMatrix<Rational>;
/// Double-precision map `M_n → M_d`.
pub type CMap = MatLinearMap<f64>;
/// Double-precision Kraus set.
pub type CKrausSet = KrausSet<f64>;
/// Double-precision positivity report.
pub type CPsdReport = PsdReport<f64>;
