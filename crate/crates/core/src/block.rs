//! Block matrices over `M_n(M_m)` and their index identifications.
//!
//! A [`BlockMatrix`] with outer size `n` and block size `m` is flattened to
//! an `nm x nm` matrix using the composite index `(i, α) ↦ i·m + α`, so
//! `flatten(R)[i·m+α, j·m+β] = r_ij[α, β]`. Amplifications by `M_k` put the
//! new index inner ([`pi_iso`]) or outer ([`pi_right`]).

use num_complex::Complex;
use num_traits::One;

use crate::error::{Error, Result};
use crate::index::IndexMap;
use crate::linalg::{kron, Matrix};
use crate::scalar::{Real, Scalar};

/// Element of `M_n(M_m)`: an `n x n` grid of `m x m` blocks, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix<T> {
    n: usize,
    m: usize,
    blocks: Vec<Matrix<T>>,
}

impl<T: Scalar> BlockMatrix<T> {
    /// Builds from a row-major list of `n * n` blocks, each `m x m`.
    pub fn from_blocks(n: usize, m: usize, blocks: Vec<Matrix<T>>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::EmptyShape { rows: n, cols: m });
        }
        if blocks.len() != n * n {
            return Err(Error::DataLength {
                len: blocks.len(),
                rows: n,
                cols: n,
            });
        }
        if let Some(b) = blocks.iter().find(|b| b.shape() != (m, m)) {
            return Err(Error::ShapeMismatch {
                op: "block",
                left: (m, m),
                right: b.shape(),
            });
        }
        Ok(Self { n, m, blocks })
    }

    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(usize, usize) -> Matrix<T>) -> Result<Self> {
        let mut blocks = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                blocks.push(f(i, j));
            }
        }
        Self::from_blocks(n, m, blocks)
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            blocks: vec![Matrix::zeros(m, m); n * n],
        }
    }

    /// Diagonal blocks `I_m`, off-diagonal blocks zero.
    pub fn identity(n: usize, m: usize) -> Self {
        let mut out = Self::zeros(n, m);
        for i in 0..n {
            out.blocks[i * n + i] = Matrix::identity(m);
        }
        out
    }

    /// Wraps each scalar entry of `a` as a `1 x 1` block.
    pub fn from_scalars(a: &Matrix<T>) -> Result<Self> {
        crate::linalg::check_square(a)?;
        let n = a.rows();
        Self::from_fn(n, 1, |i, j| Matrix::from_vec(1, 1, vec![a.entry(i, j).clone()]).expect("1x1"))
    }

    /// Outer size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Block size `m`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn side(&self) -> usize {
        self.n * self.m
    }

    pub fn block(&self, i: usize, j: usize) -> &Matrix<T> {
        assert!(i < self.n && j < self.n, "block ({i},{j}) out of range");
        &self.blocks[i * self.n + j]
    }

    pub fn blocks(&self) -> &[Matrix<T>] {
        &self.blocks
    }

    pub fn map_blocks(&self, m: usize, f: impl Fn(usize, usize, &Matrix<T>) -> Matrix<T>) -> Result<Self> {
        Self::from_fn(self.n, m, |i, j| f(i, j, self.block(i, j)))
    }

    /// Block-wise adjoint: block `(i, j)` of the result is `r_ji*`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, self.m, |i, j| self.block(j, i).adjoint()).expect("shape preserved")
    }

    /// Linear-algebra product in `M_n(M_m)`.
    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::ShapeMismatch {
                op: "block matmul",
                left: (self.n, self.m),
                right: (other.n, other.m),
            });
        }
        unflatten(&flatten(self).try_matmul(&flatten(other))?, self.n, self.m)
    }
}

impl<T: Real> BlockMatrix<T> {
    /// Maximum entrywise deviation between two block matrices of equal shape.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        flatten(self).max_abs_diff(&flatten(other))
    }
}

/// `k x k` grid of block matrices sharing the same `(n, m)`, i.e. an element
/// of `M_k(M_n(M_m))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGrid<T> {
    k: usize,
    cells: Vec<BlockMatrix<T>>,
}

impl<T: Scalar> BlockGrid<T> {
    pub fn from_cells(k: usize, cells: Vec<BlockMatrix<T>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyShape { rows: 0, cols: 0 });
        }
        if cells.len() != k * k {
            return Err(Error::DataLength {
                len: cells.len(),
                rows: k,
                cols: k,
            });
        }
        let shape = (cells[0].n, cells[0].m);
        if let Some(c) = cells.iter().find(|c| (c.n, c.m) != shape) {
            return Err(Error::ShapeMismatch {
                op: "grid",
                left: shape,
                right: (c.n, c.m),
            });
        }
        Ok(Self { k, cells })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.cells[0].n
    }

    pub fn m(&self) -> usize {
        self.cells[0].m
    }

    pub fn cell(&self, alpha: usize, beta: usize) -> &BlockMatrix<T> {
        assert!(alpha < self.k && beta < self.k, "cell ({alpha},{beta}) out of range");
        &self.cells[alpha * self.k + beta]
    }

    pub fn cells(&self) -> &[BlockMatrix<T>] {
        &self.cells
    }

    /// Nests into a single `BlockMatrix(k·n, m)` with the `α`-outer index
    /// `(α, i) ↦ α·n + i`: block `(α·n+i, β·n+j)` is `cell(α, β).block(i, j)`.
    pub fn to_block(&self) -> BlockMatrix<T> {
        let (k, n) = (self.k, self.n());
        let idx = IndexMap::new(n);
        BlockMatrix::from_fn(k * n, self.m(), |r, c| {
            let (alpha, i) = idx.split(r);
            let (beta, j) = idx.split(c);
            self.cell(alpha, beta).block(i, j).clone()
        })
        .expect("consistent grid")
    }

    /// Inverse of [`BlockGrid::to_block`].
    pub fn from_block(block: &BlockMatrix<T>, k: usize) -> Result<Self> {
        if k == 0 || !block.n.is_multiple_of(k) {
            return Err(Error::NotDivisible {
                side: block.n,
                n: k,
                m: block.n.checked_div(k).unwrap_or(0),
            });
        }
        let n = block.n / k;
        let idx = IndexMap::new(n);
        let mut cells = Vec::with_capacity(k * k);
        for alpha in 0..k {
            for beta in 0..k {
                cells.push(BlockMatrix::from_fn(n, block.m, |i, j| {
                    block.block(idx.join(alpha, i), idx.join(beta, j)).clone()
                })?);
            }
        }
        Self::from_cells(k, cells)
    }
}

/// `nm x nm` layout with `(i, α) ↦ i·m + α`.
pub fn flatten<T: Scalar>(r: &BlockMatrix<T>) -> Matrix<T> {
    let idx = IndexMap::new(r.m);
    Matrix::from_fn(r.side(), r.side(), |row, col| {
        let (i, a) = idx.split(row);
        let (j, b) = idx.split(col);
        r.block(i, j).entry(a, b).clone()
    })
}

/// Inverse of [`flatten`].
pub fn unflatten<T: Scalar>(a: &Matrix<T>, n: usize, m: usize) -> Result<BlockMatrix<T>> {
    crate::linalg::check_square(a)?;
    if n == 0 || m == 0 || n.checked_mul(m) != Some(a.rows()) {
        return Err(Error::NotDivisible { side: a.rows(), n, m });
    }
    BlockMatrix::from_fn(n, m, |i, j| a.submatrix(i * m, j * m, m, m))
}

/// `π(R ⊗ C)` with the `M_k` index inner: block `(i·k+α, j·k+β)` of the
/// `BlockMatrix(n·k, m)` result is `c_αβ · r_ij`.
pub fn pi_iso<T: Scalar>(r: &BlockMatrix<T>, c: &Matrix<T>) -> Result<BlockMatrix<T>> {
    crate::linalg::check_square(c)?;
    let k = c.rows();
    let idx = IndexMap::new(k);
    BlockMatrix::from_fn(r.n * k, r.m, |row, col| {
        let (i, a) = idx.split(row);
        let (j, b) = idx.split(col);
        r.block(i, j).scale(c.entry(a, b))
    })
}

/// Right version of [`pi_iso`] with the `M_k` index outer: block
/// `(α·n+i, β·n+j)` of the `BlockMatrix(k·n, m)` result is `c_αβ · r_ij`.
pub fn pi_right<T: Scalar>(c: &Matrix<T>, r: &BlockMatrix<T>) -> Result<BlockMatrix<T>> {
    crate::linalg::check_square(c)?;
    let k = c.rows();
    let idx = IndexMap::new(r.n);
    BlockMatrix::from_fn(k * r.n, r.m, |row, col| {
        let (a, i) = idx.split(row);
        let (b, j) = idx.split(col);
        r.block(i, j).scale(c.entry(a, b))
    })
}

/// The coisometry `V ∈ M_{nu x n²u}` with `[V]_{i,(p,q)} = δ_pi δ_qi I_u`;
/// column pairs are ordered `(p, q) ↦ p·n + q`.
pub fn build_compression_v<T: Scalar>(n: usize, u: usize) -> Matrix<T> {
    let pairs = IndexMap::new(n);
    let mut v = Matrix::zeros(n * u, n * n * u);
    for i in 0..n {
        let col_block = pairs.join(i, i);
        for a in 0..u {
            v.set(i * u + a, col_block * u + a, Complex::one());
        }
    }
    v
}

/// `R ⊗ S` regrouped as a `BlockMatrix(n², pq)`.
///
/// The Kronecker product `kron(flatten(R), flatten(S))` has composite rows
/// `((i, a), (k, b))`; they are reordered to `((i, k), (a, b))` with the
/// outer pair `(i, k) ↦ i·n + k`, so block `((i,k),(j,l))` is
/// `kron(r_ij, s_kl)`.
pub fn kron_blocks<T: Scalar>(r: &BlockMatrix<T>, s: &BlockMatrix<T>) -> Result<BlockMatrix<T>> {
    if r.n != s.n {
        return Err(Error::ShapeMismatch {
            op: "kron_blocks",
            left: (r.n, r.m),
            right: (s.n, s.m),
        });
    }
    let (n, p, q) = (r.n, r.m, s.m);
    let full = kron(&flatten(r), &flatten(s));
    let pairs = IndexMap::new(n);
    let inner = IndexMap::new(q);
    // ((i, k), (a, b)) -> row of the flat Kronecker product
    let source = |outer: usize, within: usize| {
        let (i, k) = pairs.split(outer);
        let (a, b) = inner.split(within);
        (i * p + a) * n * q + k * q + b
    };
    BlockMatrix::from_fn(n * n, p * q, |row, col| {
        Matrix::from_fn(p * q, p * q, |x, y| full.entry(source(row, x), source(col, y)).clone())
    })
}

/// `V T V*` by selection: block `(i, j)` of the result is the block of `t`
/// at outer position `((i,i), (j,j))`.
pub fn diag_compress<T: Scalar>(t: &BlockMatrix<T>) -> Result<BlockMatrix<T>> {
    let n = exact_sqrt(t.n).ok_or(Error::NotPerfectSquare(t.n))?;
    let pairs = IndexMap::new(n);
    BlockMatrix::from_fn(n, t.m, |i, j| t.block(pairs.join(i, i), pairs.join(j, j)).clone())
}

/// `V T V*` by explicit multiplication with [`build_compression_v`].
pub fn compress_by_multiplication<T: Scalar>(t: &BlockMatrix<T>) -> Result<BlockMatrix<T>> {
    let n = exact_sqrt(t.n).ok_or(Error::NotPerfectSquare(t.n))?;
    let v = build_compression_v::<T>(n, t.m);
    let vt = v.try_matmul(&flatten(t))?;
    unflatten(&vt.try_matmul(&v.adjoint())?, n, t.m)
}

fn exact_sqrt(x: usize) -> Option<usize> {
    let r = (x as f64).sqrt().round() as usize;
    (r.checked_mul(r) == Some(x) && r > 0).then_some(r)
}
