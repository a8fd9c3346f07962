//! Dense complex-matrix kernel: arithmetic, Kronecker products, the Hermitian
//! eigensolver and tolerance-aware positivity verdicts.

mod eigen;
mod matrix;
mod psd;

pub use eigen::{check_hermitian, eig_hermitian, eigvals_hermitian, hermiticity_threshold, HermitianEigen};
pub use matrix::{hermitize, kron, Matrix};
pub use psd::{is_psd, psd_check, PsdReport, PsdTolerance};
pub(crate) use matrix::ensure_square as check_square;
