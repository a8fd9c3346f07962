//! Seeded instance generators.
//!
//! Pipeline: a `u64` seed initializes `ChaCha8Rng` (the portable ChaCha
//! stream cipher with 8 rounds), uniforms come from `rand`'s `Standard` f64
//! sampler, and Box–Muller turns pairs of uniforms into one standard complex
//! Gaussian (`E|z|² = 1`). Sub-seeds are derived with the SplitMix64
//! finalizer applied to `seed ^ golden·(stream + 1)`. All generators are
//! pure functions of their arguments.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::block::{unflatten, BlockMatrix};
use crate::cpmaps::{KrausSet, MatLinearMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed of a deterministic instance stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed(pub u64);

impl Seed {
    pub const fn value(self) -> u64 {
        self.0
    }

    /// Independent sub-seed for stream `index`.
    pub fn derive(self, index: u64) -> Seed {
        Seed(splitmix64(self.0 ^ GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Seed {
    type Err = Error;

    /// Accepts decimal (`42`) or `0x`-prefixed hexadecimal (`0x2a`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            Some(hex) => u64::from_str_radix(hex, 16),
            None => s.parse::<u64>(),
        };
        parsed
            .map(Seed)
            .map_err(|e| Error::InvalidArgument(format!("bad seed {s:?}: {e}")))
    }
}

/// SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One standard complex Gaussian sample via Box–Muller.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex<f64> {
    // 1 - U lies in (0, 1], keeping the logarithm finite
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    let radius = (-u1.ln()).sqrt();
    let angle = TAU * u2;
    Complex::new(radius * angle.cos(), radius * angle.sin())
}

/// `rows x cols` matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<T: Real>(rows: usize, cols: usize, seed: Seed) -> Result<Matrix<T>> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyShape { rows, cols });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.value());
    let data = (0..rows * cols)
        .map(|_| {
            let z = complex_gaussian(&mut rng);
            Complex::new(T::from_f64_lossy(z.re), T::from_f64_lossy(z.im))
        })
        .collect();
    Matrix::from_vec(rows, cols, data)
}

/// `G G*` with `G = ginibre(dim, rank, seed)`: PSD with rank at most `rank`.
pub fn random_psd<T: Real>(dim: usize, rank: usize, seed: Seed) -> Result<Matrix<T>> {
    if rank == 0 || rank > dim {
        return Err(Error::InvalidArgument(format!("rank {rank} outside 1..={dim}")));
    }
    let g = ginibre::<T>(dim, rank, seed)?;
    g.try_matmul(&g.adjoint())
}

/// Full-rank random PSD element of `M_n(M_m)`.
pub fn random_block_psd<T: Real>(n: usize, m: usize, seed: Seed) -> Result<BlockMatrix<T>> {
    let side = n * m;
    unflatten(&random_psd(side, side, seed)?, n, m)
}

/// `num_kraus` Ginibre Kraus operators `d x n`, operator `t` drawn from
/// sub-seed `seed.derive(t)`.
pub fn random_kraus_set<T: Real>(n: usize, d: usize, num_kraus: usize, seed: Seed) -> Result<KrausSet<T>> {
    if num_kraus == 0 {
        return Err(Error::InvalidArgument("num_kraus must be at least 1".into()));
    }
    let ops = (0..num_kraus)
        .map(|t| ginibre::<T>(d, n, seed.derive(t as u64)))
        .collect::<Result<Vec<_>>>()?;
    KrausSet::new(n, d, ops)
}

/// CP map `X ↦ Σ_t K_t X K_t*` from [`random_kraus_set`].
pub fn random_cp_map<T: Real>(n: usize, d: usize, num_kraus: usize, seed: Seed) -> Result<MatLinearMap<T>> {
    Ok(random_kraus_set::<T>(n, d, num_kraus, seed)?.to_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::flatten;
    use crate::linalg::{eigvals_hermitian, is_psd};

    #[test]
    fn seed_parsing() {
        assert_eq!("42".parse::<Seed>().unwrap(), Seed(42));
        assert_eq!("0x2a".parse::<Seed>().unwrap(), Seed(42));
        assert_eq!("0XFF".parse::<Seed>().unwrap(), Seed(255));
        assert!("-1".parse::<Seed>().is_err());
        assert!("0xzz".parse::<Seed>().is_err());
        assert!("".parse::<Seed>().is_err());
    }

    #[test]
    fn splitmix_reference_values() {
        // first outputs of SplitMix64 seeded with 0 (state advanced by gamma)
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(splitmix64(GOLDEN_GAMMA), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn derived_seeds_differ() {
        let s = Seed(7);
        let subs: std::collections::HashSet<_> = (0..1000).map(|i| s.derive(i)).collect();
        assert_eq!(subs.len(), 1000);
        assert_eq!(s.derive(3), Seed(7).derive(3));
    }

    #[test]
    fn ginibre_determinism_and_rejection() {
        let a = ginibre::<f64>(3, 4, Seed(9)).unwrap();
        assert_eq!(a, ginibre::<f64>(3, 4, Seed(9)).unwrap());
        assert_ne!(a, ginibre::<f64>(3, 4, Seed(10)).unwrap());
        assert!(ginibre::<f64>(0, 4, Seed(1)).is_err());
        assert!(ginibre::<f64>(2, 0, Seed(1)).is_err());
    }

    #[test]
    fn ginibre_moments() {
        let g = ginibre::<f64>(100, 100, Seed(2024)).unwrap();
        let count = g.data().len() as f64;
        let mean = g.data().iter().fold(Complex::new(0.0, 0.0), |a, z| a + z) / count;
        assert!(mean.norm() <= 0.05, "mean {mean}");
        let second = g.data().iter().map(|z| z.norm_sqr()).sum::<f64>() / count;
        assert!((second - 1.0).abs() < 0.05, "E|z|^2 = {second}");
    }

    #[test]
    fn random_psd_properties() {
        for s in 0..20 {
            let a = random_psd::<f64>(6, 6, Seed(s)).unwrap();
            assert!(is_psd(&a).unwrap().is_psd);
            assert!(a.hermiticity_defect().unwrap() <= 1e-14 * a.frobenius());
        }
        let r1 = random_psd::<f64>(5, 1, Seed(3)).unwrap();
        let v = eigvals_hermitian(&r1).unwrap();
        assert!(v[3].abs() <= 1e-10 * v[4]);
        assert!(random_psd::<f64>(3, 0, Seed(1)).is_err());
        assert!(random_psd::<f64>(3, 4, Seed(1)).is_err());
    }

    #[test]
    fn random_block_psd_shape_and_cone() {
        let r = random_block_psd::<f64>(3, 2, Seed(5)).unwrap();
        assert_eq!((r.n(), r.m()), (3, 2));
        assert!(r.blocks().iter().all(|b| b.shape() == (2, 2)));
        assert!(is_psd(&flatten(&r)).unwrap().is_psd);
        assert_eq!(r, random_block_psd::<f64>(3, 2, Seed(5)).unwrap());
    }

    #[test]
    fn random_cp_map_is_deterministic() {
        let a = random_cp_map::<f64>(2, 3, 2, Seed(11)).unwrap();
        assert_eq!(a, random_cp_map::<f64>(2, 3, 2, Seed(11)).unwrap());
        assert_eq!((a.n(), a.d()), (2, 3));
        assert!(random_cp_map::<f64>(2, 3, 0, Seed(11)).is_err());
    }
}
