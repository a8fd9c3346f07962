//! Linear maps `φ: M_n → M_d`, Choi matrices and complete positivity.
//!
//! A map is stored by its action on matrix units, `action[i][j] = φ(E_ij)`.
//! The Choi matrix `[φ(E_ij)] ∈ M_n(M_d)` is then a repackaging, and `φ` is
//! completely positive exactly when that block matrix is PSD. The
//! amplification `id_{M_m} ⊗ φ` applied to `R = Σ r_ij ⊗ E_ij` is
//! `Σ r_ij ⊗ φ(E_ij)`, the sum contraction of `R` against the Choi matrix.

use num_complex::Complex;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::block::{flatten, BlockMatrix};
use crate::error::{Error, Result};
use crate::index::IndexMap;
use crate::linalg::{eig_hermitian, hermitize, psd_check, Matrix, PsdReport, PsdTolerance};
use crate::randgen::{complex_gaussian, Seed};
use crate::scalar::{Real, Scalar};
use crate::schur::sum_contract;

/// Linear map `M_n → M_d` given by its action on matrix units.
#[derive(Debug, Clone, PartialEq)]
pub struct MatLinearMap<T> {
    n: usize,
    d: usize,
    action: Vec<Matrix<T>>,
}

impl<T: Scalar> MatLinearMap<T> {
    /// `action` lists `φ(E_ij)` in row-major `(i, j)` order.
    pub fn new(n: usize, d: usize, action: Vec<Matrix<T>>) -> Result<Self> {
        let as_block = BlockMatrix::from_blocks(n, d, action)?;
        Ok(Self::from_choi(as_block))
    }

    pub fn from_fn(n: usize, d: usize, f: impl FnMut(usize, usize) -> Matrix<T>) -> Result<Self> {
        Ok(Self::from_choi(BlockMatrix::from_fn(n, d, f)?))
    }

    /// The map whose Choi matrix is `choi`.
    pub fn from_choi(choi: BlockMatrix<T>) -> Self {
        Self {
            n: choi.n(),
            d: choi.m(),
            action: choi.blocks().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `φ(E_ij)`.
    pub fn action(&self, i: usize, j: usize) -> &Matrix<T> {
        assert!(i < self.n && j < self.n, "matrix unit ({i},{j}) out of range");
        &self.action[i * self.n + j]
    }
}

impl<T: Real> MatLinearMap<T> {
    /// Largest `‖φ(E_ji) - φ(E_ij)*‖_F`; zero for Hermiticity-preserving maps.
    pub fn hermiticity_preservation_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let diff = self.action(j, i) - &self.action(i, j).adjoint();
                worst = worst.max(diff.frobenius());
            }
        }
        worst
    }
}

/// `X ↦ X` on `M_n`.
pub fn identity_map<T: Scalar>(n: usize) -> MatLinearMap<T> {
    MatLinearMap::from_fn(n, n, |i, j| Matrix::unit(n, i, j)).expect("valid shapes")
}

/// `X ↦ Xᵀ` on `M_n`.
pub fn transpose_map<T: Scalar>(n: usize) -> MatLinearMap<T> {
    MatLinearMap::from_fn(n, n, |i, j| Matrix::unit(n, j, i)).expect("valid shapes")
}

/// Choi matrix `[φ(E_ij)] ∈ M_n(M_d)`.
pub fn choi<T: Scalar>(phi: &MatLinearMap<T>) -> BlockMatrix<T> {
    BlockMatrix::from_blocks(phi.n, phi.d, phi.action.clone()).expect("map invariants hold")
}

/// Complete-positivity verdict: [`psd_check`] of the flattened Choi matrix.
///
/// A map that does not preserve Hermiticity has a non-Hermitian Choi
/// matrix; that is reported as an error rather than a negative verdict.
pub fn is_cp<T: Real>(phi: &MatLinearMap<T>, tol: PsdTolerance<T>) -> Result<PsdReport<T>> {
    psd_check(&flatten(&choi(phi)), tol)
}

/// `φ(X) = Σ_ij x_ij φ(E_ij)`.
pub fn apply<T: Scalar>(phi: &MatLinearMap<T>, x: &Matrix<T>) -> Result<Matrix<T>> {
    if x.shape() != (phi.n, phi.n) {
        return Err(Error::ShapeMismatch {
            op: "apply",
            left: (phi.n, phi.n),
            right: x.shape(),
        });
    }
    let mut acc = Matrix::zeros(phi.d, phi.d);
    for i in 0..phi.n {
        for j in 0..phi.n {
            let xij = x.entry(i, j);
            if !xij.is_zero() {
                acc.add_assign_checked(&phi.action(i, j).scale(xij))?;
            }
        }
    }
    Ok(acc)
}

/// `(id_{M_m} ⊗ φ)(R) = Σ_ij kron(r_ij, φ(E_ij))`, an `md x md` matrix with
/// the `M_m` index outer.
pub fn extend_apply<T: Scalar>(phi: &MatLinearMap<T>, r: &BlockMatrix<T>) -> Result<Matrix<T>> {
    if r.n() != phi.n {
        return Err(Error::ShapeMismatch {
            op: "extend_apply",
            left: (phi.n, phi.d),
            right: (r.n(), r.m()),
        });
    }
    sum_contract(r, &choi(phi))
}

/// Kraus operators `K_t ∈ M_{d x n}` with `φ(X) = Σ_t K_t X K_t*`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet<T> {
    n: usize,
    d: usize,
    kraus: Vec<Matrix<T>>,
}

impl<T: Scalar> KrausSet<T> {
    pub fn new(n: usize, d: usize, kraus: Vec<Matrix<T>>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::EmptyShape { rows: d, cols: n });
        }
        if let Some(k) = kraus.iter().find(|k| k.shape() != (d, n)) {
            return Err(Error::ShapeMismatch {
                op: "kraus",
                left: (d, n),
                right: k.shape(),
            });
        }
        Ok(Self { n, d, kraus })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn operators(&self) -> &[Matrix<T>] {
        &self.kraus
    }

    pub fn len(&self) -> usize {
        self.kraus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus.is_empty()
    }

    /// `Σ_t K_t X K_t*`.
    pub fn apply(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        let mut acc = Matrix::zeros(self.d, self.d);
        for k in &self.kraus {
            acc.add_assign_checked(&k.try_matmul(x)?.try_matmul(&k.adjoint())?)?;
        }
        Ok(acc)
    }

    /// The map `X ↦ Σ_t K_t X K_t*`, tabulated on matrix units.
    ///
    /// `K E_ij K*` is the outer product of columns `i` and `j` of `K`.
    pub fn to_map(&self) -> MatLinearMap<T> {
        MatLinearMap::from_fn(self.n, self.d, |i, j| {
            let mut acc = Matrix::zeros(self.d, self.d);
            for k in &self.kraus {
                let outer = Matrix::from_fn(self.d, self.d, |a, b| k.entry(a, i).clone() * k.entry(b, j).conj());
                acc.add_assign_checked(&outer).expect("d x d");
            }
            acc
        })
        .expect("valid shapes")
    }
}

impl<T: Real> KrausSet<T> {
    /// `max_ij ‖Σ_t K_t E_ij K_t* - φ(E_ij)‖_F`.
    pub fn reconstruction_residual(&self, phi: &MatLinearMap<T>) -> Result<T> {
        if (self.n, self.d) != (phi.n, phi.d) {
            return Err(Error::ShapeMismatch {
                op: "reconstruction",
                left: (self.n, self.d),
                right: (phi.n, phi.d),
            });
        }
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let got = self.apply(&Matrix::unit(self.n, i, j))?;
                worst = worst.max(got.try_sub(phi.action(i, j))?.frobenius());
            }
        }
        Ok(worst)
    }
}

/// Kraus decomposition from the eigendecomposition of the Choi matrix.
///
/// Every eigenpair `(λ_t, w_t)` with `λ_t > rank_tol · λ_max` contributes
/// `[K_t]_{α,i} = sqrt(λ_t) · w_t[i·d + α]`. Fails with
/// [`Error::NotCompletelyPositive`] when the Choi matrix is not PSD under
/// `tol`.
pub fn kraus<T: Real>(phi: &MatLinearMap<T>, rank_tol: T, tol: PsdTolerance<T>) -> Result<KrausSet<T>> {
    let c = flatten(&choi(phi));
    let report = psd_check(&c, tol)?;
    if !report.is_psd {
        return Err(Error::NotCompletelyPositive {
            min_eigenvalue: report.min_eigenvalue.to_f64().unwrap_or(f64::NAN),
            tolerance: report.tolerance_used.to_f64().unwrap_or(f64::NAN),
        });
    }
    let eig = eig_hermitian(&c)?;
    let lambda_max = eig.values.last().copied().unwrap_or_else(T::zero);
    let cutoff = rank_tol * lambda_max;
    let layout = IndexMap::new(phi.d);
    let mut ops = Vec::new();
    for (t, &lambda) in eig.values.iter().enumerate().rev() {
        if lambda <= cutoff || lambda <= T::zero() {
            continue;
        }
        let root = Complex::new(lambda.sqrt(), T::zero());
        ops.push(Matrix::from_fn(phi.d, phi.n, |alpha, i| {
            *eig.vectors.entry(layout.join(i, alpha), t) * root
        }));
    }
    KrausSet::new(phi.n, phi.d, ops)
}

/// Default relative rank cutoff for [`kraus`].
pub fn default_rank_tol<T: Real>() -> T {
    T::from_f64_lossy(1e-10)
}

/// A rank-one input `x x*` whose image is not PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample<T> {
    /// 0-based index of the trial that found it.
    pub trial: usize,
    /// Unit vector `x ∈ ℂⁿ`.
    pub vector: Vec<Complex<T>>,
    /// Minimum eigenvalue of the Hermitian part of `φ(x x*)`.
    pub min_eigenvalue: T,
    /// `‖φ(xx*) - φ(xx*)*‖_F`; above threshold the image is not even Hermitian.
    pub hermiticity_defect: T,
}

/// One-sided randomized positivity test.
///
/// Tries the basis vectors `e_0, …, e_{n-1}` first, then complex-Gaussian
/// unit vectors, for `trials` candidates in total. Returns the first `x`
/// with `φ(xx*)` non-Hermitian or with `λ_min < -tolerance`. `None` never
/// certifies positivity.
pub fn positive_map_falsify<T: Real>(
    phi: &MatLinearMap<T>,
    trials: usize,
    seed: Seed,
    tol: PsdTolerance<T>,
) -> Result<Option<Counterexample<T>>> {
    let n = phi.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.value());
    for trial in 0..trials {
        let vector: Vec<Complex<T>> = if trial < n {
            (0..n)
                .map(|k| if k == trial { Complex::new(T::one(), T::zero()) } else { Complex::zero() })
                .collect()
        } else {
            let raw: Vec<Complex<f64>> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
            let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            raw.iter()
                .map(|z| Complex::new(T::from_f64_lossy(z.re / norm), T::from_f64_lossy(z.im / norm)))
                .collect()
        };
        let x = Matrix::from_vec(n, 1, vector.clone())?;
        let image = apply(phi, &(&x * &x.adjoint()))?;
        let defect = image.hermiticity_defect()?;
        let herm = hermitize(&image)?;
        let report = psd_check(&herm, tol)?;
        let hermitian = defect <= crate::linalg::hermiticity_threshold(&image);
        if !hermitian || !report.is_psd {
            return Ok(Some(Counterexample {
                trial,
                vector,
                min_eigenvalue: report.min_eigenvalue,
                hermiticity_defect: defect,
            }));
        }
    }
    Ok(None)
}
