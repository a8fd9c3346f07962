//! Scalar traits.
//!
//! Every matrix in this crate has complex entries `Complex<T>`. The real part
//! type `T` is one of two kinds:
//!
//! * [`Scalar`]: any exact or floating field type. Structural operations
//!   (Kronecker products, block layouts, Schur products, compressions) only
//!   need ring arithmetic and work for `Ratio<i64>` as well as `f64`.
//! * [`Real`]: floating point types. Spectral operations (eigensolver,
//!   positivity verdicts, Kraus decompositions, random instances) need
//!   square roots and a machine epsilon.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num};

/// Ring arithmetic needed by the structural operations.
pub trait Scalar: Clone + Num + Neg<Output = Self> + PartialEq + Debug {}

impl<T> Scalar for T where T: Clone + Num + Neg<Output = T> + PartialEq + Debug {}

/// Floating point scalar: f32 or f64.
pub trait Real: Scalar + Float + FromPrimitive + Display + Send + Sync + 'static {
    /// Relative bound on the Hermiticity defect accepted by the eigensolver.
    fn hermiticity_rtol() -> Self;
    /// Default relative PSD tolerance (multiplies the Frobenius norm).
    fn default_psd_rtol() -> Self;
    /// Default absolute PSD tolerance.
    fn default_psd_atol() -> Self;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to a float type")
    }
}

impl Real for f64 {
    fn hermiticity_rtol() -> Self {
        1e-8
    }
    fn default_psd_rtol() -> Self {
        1e-10
    }
    fn default_psd_atol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn hermiticity_rtol() -> Self {
        1e-4
    }
    fn default_psd_rtol() -> Self {
        1e-4
    }
    fn default_psd_atol() -> Self {
        1e-6
    }
}

/// Exact rational scalar used for bit-exact identities.
pub type Rational = Ratio<i64>;
