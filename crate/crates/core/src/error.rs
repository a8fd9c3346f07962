use thiserror::Error;

/// Errors raised by matrix, block and map operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("data length {len} does not match {rows}x{cols}")]
    DataLength { len: usize, rows: usize, cols: usize },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyShape { rows: usize, cols: usize },

    #[error("side {side} is not {n}*{m}")]
    NotDivisible { side: usize, n: usize, m: usize },

    #[error("outer size {0} is not a perfect square")]
    NotPerfectSquare(usize),

    #[error("hermiticity defect {defect:e} exceeds threshold {threshold:e}")]
    NotHermitian { defect: f64, threshold: f64 },

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("map is not completely positive: Choi minimum eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotCompletelyPositive { min_eigenvalue: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
