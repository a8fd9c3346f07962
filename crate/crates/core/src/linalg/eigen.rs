//! Hermitian eigensolver (cyclic complex Jacobi).

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::{ensure_square, hermitize, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    /// Eigenvalues, ascending.
    pub values: Vec<T>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix<T>,
}

/// Threshold on the Hermiticity defect: `hermiticity_rtol * max(1, ‖a‖_F)`.
pub fn hermiticity_threshold<T: Real>(a: &Matrix<T>) -> T {
    T::hermiticity_rtol() * a.frobenius().max(T::one())
}

/// Checks the Hermiticity precondition and returns the measured defect.
pub fn check_hermitian<T: Real>(a: &Matrix<T>) -> Result<T> {
    ensure_square(a)?;
    let defect = a.hermiticity_defect()?;
    let threshold = hermiticity_threshold(a);
    // only NaN fails both comparisons
    if defect > threshold || defect.is_nan() {
        return Err(Error::NotHermitian {
            defect: defect.to_f64().unwrap_or(f64::NAN),
            threshold: threshold.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(defect)
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of `hermitize(a)`.
///
/// Fails when `a` is not square or its Hermiticity defect exceeds
/// [`hermiticity_threshold`]; positivity is meaningless for such input.
pub fn eig_hermitian<T: Real>(a: &Matrix<T>) -> Result<HermitianEigen<T>> {
    check_hermitian(a)?;
    let mut h = hermitize(a)?;
    let n = h.rows();
    let mut v = Matrix::<T>::identity(n);

    let scale = h.frobenius();
    let target = T::epsilon() * scale;
    let mut converged = n <= 1 || scale.is_zero();
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut h, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&h) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        h.entry(i, i)
            .re
            .partial_cmp(&h.entry(j, j).re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| h.entry(i, i).re).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| *v.entry(r, order[c]));
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigvals_hermitian<T: Real>(a: &Matrix<T>) -> Result<Vec<T>> {
    Ok(eig_hermitian(a)?.values)
}

fn off_diagonal_norm<T: Real>(h: &Matrix<T>) -> T {
    let n = h.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + h.entry(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `h[p, q]`, accumulated into `v`.
///
/// With `h[p, q] = |h| e^{iφ}` the unitary acting on the `(p, q)` plane is
/// `W = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]`, i.e. a phase fix that makes the
/// pivot real followed by a real Givens rotation.
fn rotate<T: Real>(h: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let hpq = *h.entry(p, q);
    let r = hpq.norm();
    if r.is_zero() {
        return;
    }
    let app = h.entry(p, p).re;
    let aqq = h.entry(q, q).re;
    let two = T::one() + T::one();
    // skip pivots already negligible against both diagonal entries
    let eps = T::epsilon();
    if r <= eps * eps * (app.abs() + aqq.abs()) {
        h.set(p, q, Complex::zero());
        h.set(q, p, Complex::zero());
        return;
    }
    let phase = hpq / r;
    let tau = (aqq - app) / (two * r);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let cc = Complex::new(c, T::zero());
    let sc = Complex::new(s, T::zero());
    let ph_conj = phase.conj();

    let n = h.rows();
    // h <- h W
    for k in 0..n {
        let hkp = *h.entry(k, p);
        let hkq = *h.entry(k, q);
        *h.entry_mut(k, p) = cc * hkp - sc * ph_conj * hkq;
        *h.entry_mut(k, q) = sc * hkp + cc * ph_conj * hkq;
    }
    // h <- W* h
    for k in 0..n {
        let hpk = *h.entry(p, k);
        let hqk = *h.entry(q, k);
        *h.entry_mut(p, k) = cc * hpk - sc * phase * hqk;
        *h.entry_mut(q, k) = sc * hpk + cc * phase * hqk;
    }
    h.set(p, q, Complex::zero());
    h.set(q, p, Complex::zero());
    let hp = h.entry(p, p).re;
    let hq = h.entry(q, q).re;
    h.set(p, p, Complex::new(hp, T::zero()));
    h.set(q, q, Complex::new(hq, T::zero()));
    // v <- v W
    for k in 0..n {
        let vkp = *v.entry(k, p);
        let vkq = *v.entry(k, q);
        *v.entry_mut(k, p) = cc * vkp - sc * ph_conj * vkq;
        *v.entry_mut(k, q) = sc * vkp + cc * ph_conj * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn assert_values(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    fn max_residual(a: &Matrix<f64>, e: &HermitianEigen<f64>) -> f64 {
        let av = a * &e.vectors;
        let mut worst: f64 = 0.0;
        for k in 0..a.rows() {
            let mut s = 0.0;
            for r in 0..a.rows() {
                s += (av.entry(r, k) - e.vectors.entry(r, k) * e.values[k]).norm_sqr();
            }
            worst = worst.max(s.sqrt());
        }
        worst
    }

    #[test]
    fn small_known_spectra() {
        assert_values(&eigvals_hermitian(&Matrix::<f64>::identity(3)).unwrap(), &[1.0, 1.0, 1.0]);
        let a = Matrix::from_real(2, 2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        assert_values(&eigvals_hermitian(&a).unwrap(), &[-1.0, 3.0]);
        let d = Matrix::diagonal(&[c(5.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0)]);
        assert_values(&eigvals_hermitian(&d).unwrap(), &[-2.0, 0.0, 5.0]);
    }

    #[test]
    fn complex_hermitian_2x2() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let a = Matrix::from_vec(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let e = eig_hermitian(&a).unwrap();
        assert_values(&e.values, &[1.0, 3.0]);
        assert!(max_residual(&a, &e) < 1e-12);
    }

    #[test]
    fn residual_and_orthonormality_on_dense_input() {
        let n = 9;
        let g = Matrix::from_fn(n, n, |r, k| {
            let x = ((r * 31 + k * 17) % 23) as f64 / 7.0 - 1.5;
            let y = ((r * 13 + k * 29) % 19) as f64 / 5.0 - 1.8;
            c(x, y)
        });
        let a = &g + &g.adjoint();
        let e = eig_hermitian(&a).unwrap();
        let tol = 1e-8 * a.frobenius().max(1.0);
        assert!(max_residual(&a, &e) <= tol);
        let gram = &e.vectors.adjoint() * &e.vectors;
        assert!(gram.max_abs_diff(&Matrix::identity(n)).unwrap() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let a = Matrix::from_real(2, 2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian { .. })));
        assert!(matches!(eig_hermitian(&Matrix::<f64>::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn tiny_defect_is_tolerated() {
        let a = Matrix::from_vec(2, 2, vec![c(1.0, 0.0), c(0.5, 1e-12), c(0.5, 0.0), c(1.0, 0.0)]).unwrap();
        assert_values(&eigvals_hermitian(&a).unwrap(), &[0.5, 1.5]);
    }

    #[test]
    fn zero_and_one_by_one() {
        assert_values(&eigvals_hermitian(&Matrix::<f64>::zeros(3, 3)).unwrap(), &[0.0, 0.0, 0.0]);
        let a = Matrix::from_real(1, 1, vec![-4.0]).unwrap();
        assert_values(&eigvals_hermitian(&a).unwrap(), &[-4.0]);
    }

    #[test]
    fn works_in_single_precision() {
        let a = Matrix::<f32>::from_real(2, 2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        let v = eigvals_hermitian(&a).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-5 && (v[1] - 3.0).abs() < 1e-5);
    }
}
