//! Tensorial Schur products and Schur multipliers.
//!
//! For `R ∈ M_n(M_p)` and `S ∈ M_n(M_q)` the tensorial Schur product is the
//! block matrix `[r_ij ⊗ s_ij] ∈ M_n(M_pq)`. It equals the compression
//! `V (R ⊗ S) V*` of the full Kronecker product onto the "diagonal pairs"
//! (see [`crate::block::diag_compress`]), which is why it preserves
//! positivity. In finite dimensions the entries lie in `M_p ⊗ M_q = M_pq`
//! with its unique C*-norm, so no choice of ambient algebra is involved.

use num_complex::Complex;
use num_traits::One;

use crate::block::{pi_right, BlockGrid, BlockMatrix};
use crate::error::{Error, Result};
use crate::linalg::{kron, Matrix};
use crate::scalar::Scalar;

fn check_outer(op: &'static str, r: (usize, usize), s: (usize, usize)) -> Result<()> {
    if r.0 != s.0 {
        return Err(Error::ShapeMismatch { op, left: r, right: s });
    }
    Ok(())
}

/// `R ∘⊗ S`: block `(i, j)` is `kron(r_ij, s_ij)`.
pub fn tensor_schur<T: Scalar>(r: &BlockMatrix<T>, s: &BlockMatrix<T>) -> Result<BlockMatrix<T>> {
    check_outer("tensor_schur", (r.n(), r.m()), (s.n(), s.m()))?;
    r.map_blocks(r.m() * s.m(), |i, j, rij| kron(rij, s.block(i, j)))
}

/// Classical entrywise (Hadamard) product of square matrices.
pub fn schur<T: Scalar>(r: &Matrix<T>, s: &Matrix<T>) -> Result<Matrix<T>> {
    r.try_hadamard(s)
}

/// `Σ_ij kron(r_ij, s_ij)`, accumulated in row-major `(i, j)` order.
pub fn sum_contract<T: Scalar>(r: &BlockMatrix<T>, s: &BlockMatrix<T>) -> Result<Matrix<T>> {
    check_outer("sum_contract", (r.n(), r.m()), (s.n(), s.m()))?;
    let side = r.m() * s.m();
    let mut acc = Matrix::zeros(side, side);
    for i in 0..r.n() {
        for j in 0..r.n() {
            acc.add_assign_checked(&kron(r.block(i, j), s.block(i, j)))?;
        }
    }
    Ok(acc)
}

/// The column `1_n ∈ M_{nu x u}`: `n` stacked copies of `I_u`.
pub fn ones_column<T: Scalar>(n: usize, u: usize) -> Matrix<T> {
    Matrix::from_fn(n * u, u, |r, c| if r % u == c { Complex::one() } else { num_traits::Zero::zero() })
}

/// The all-ones matrix `J_k`. `J_k / k` is a projection.
pub fn all_ones<T: Scalar>(k: usize) -> Matrix<T> {
    Matrix::from_fn(k, k, |_, _| Complex::one())
}

/// The level-`k` amplification of `L_R: S ↦ R ∘⊗ S`.
///
/// Cell `(α, β)` of the output grid is `tensor_schur(R, S_αβ)`. Nesting the
/// output with the `α`-outer layout gives exactly
/// `tensor_schur(pi_right(J_k, R), s_hat.to_block())`; see [`lr_as_tensor_schur`].
pub fn lr_amplified<T: Scalar>(r: &BlockMatrix<T>, s_hat: &BlockGrid<T>) -> Result<BlockGrid<T>> {
    check_outer("lr_amplified", (r.n(), r.m()), (s_hat.n(), s_hat.m()))?;
    let cells = s_hat
        .cells()
        .iter()
        .map(|cell| tensor_schur(r, cell))
        .collect::<Result<Vec<_>>>()?;
    BlockGrid::from_cells(s_hat.k(), cells)
}

/// `(J_k ⊗ R) ∘⊗ Ŝ` at level `k·n`, built through the right identification.
pub fn lr_as_tensor_schur<T: Scalar>(r: &BlockMatrix<T>, s_hat: &BlockGrid<T>) -> Result<BlockMatrix<T>> {
    let amplified = pi_right(&all_ones(s_hat.k()), r)?;
    tensor_schur(&amplified, &s_hat.to_block())
}
