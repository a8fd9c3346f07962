use super::eigen::{check_hermitian, eig_hermitian};
use super::matrix::Matrix;
use crate::error::Result;
use crate::scalar::Real;

/// Cone-membership margin: `rtol * ‖A‖_F + atol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdTolerance<T> {
    pub rtol: T,
    pub atol: T,
}

impl<T: Real> Default for PsdTolerance<T> {
    fn default() -> Self {
        Self {
            rtol: T::default_psd_rtol(),
            atol: T::default_psd_atol(),
        }
    }
}

impl<T: Real> PsdTolerance<T> {
    pub fn new(rtol: T, atol: T) -> Self {
        Self { rtol, atol }
    }

    pub fn threshold(&self, a: &Matrix<T>) -> T {
        self.rtol * a.frobenius() + self.atol
    }
}

/// Positivity verdict for a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdReport<T> {
    /// `min_eigenvalue >= -tolerance_used`.
    pub is_psd: bool,
    pub min_eigenvalue: T,
    pub max_eigenvalue: T,
    /// Absolute threshold the verdict was taken against.
    pub tolerance_used: T,
    /// `‖A - A*‖_F` of the input before symmetrization.
    pub hermiticity_defect: T,
}

impl<T: Real> PsdReport<T> {
    /// `min_eigenvalue + tolerance_used`; nonnegative exactly when PSD.
    pub fn margin(&self) -> T {
        self.min_eigenvalue + self.tolerance_used
    }
}

/// Decides membership of `a` in the PSD cone.
///
/// The input must already be Hermitian up to the eigensolver's threshold;
/// it is not repaired here.
pub fn psd_check<T: Real>(a: &Matrix<T>, tol: PsdTolerance<T>) -> Result<PsdReport<T>> {
    let hermiticity_defect = check_hermitian(a)?;
    let values = eig_hermitian(a)?.values;
    let min_eigenvalue = values.first().copied().unwrap_or_else(T::zero);
    let max_eigenvalue = values.last().copied().unwrap_or_else(T::zero);
    let tolerance_used = tol.threshold(a);
    Ok(PsdReport {
        is_psd: min_eigenvalue >= -tolerance_used,
        min_eigenvalue,
        max_eigenvalue,
        tolerance_used,
        hermiticity_defect,
    })
}

/// [`psd_check`] with the default tolerances for `T`.
pub fn is_psd<T: Real>(a: &Matrix<T>) -> Result<PsdReport<T>> {
    psd_check(a, PsdTolerance::default())
}
