//! Seeded property campaigns.
//!
//! Each suite draws instances from sub-seeds of one base seed, checks the
//! positivity statements and structural identities for every instance, and
//! collects the outcome. A fixed `(seed, instances, limits)` always yields
//! the same [`SuiteOutcome`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::block::{compress_by_multiplication, diag_compress, flatten, kron_blocks, unflatten, BlockGrid};
use crate::cpmaps::{choi, default_rank_tol, extend_apply, is_cp, kraus, positive_map_falsify, transpose_map};
use crate::error::{Error, Result};
use crate::linalg::{eigvals_hermitian, kron, psd_check, Matrix, PsdReport, PsdTolerance};
use crate::randgen::{random_cp_map, random_psd, Seed};
use crate::schur::{all_ones, lr_amplified, lr_as_tensor_schur, ones_column, schur, sum_contract, tensor_schur};
use num_complex::Complex;

/// Tolerance on `sum_contract` against the `1_n` contraction, per entry.
pub const CONTRACTION_ATOL: f64 = 1e-12;
/// Tolerance on matched spectra (Kronecker products and swapped Schur factors).
pub const SPECTRUM_ATOL: f64 = 1e-8;
/// Kraus reconstruction residual bound.
pub const KRAUS_RESIDUAL: f64 = 1e-8;
/// Bound on `(J_k/k)² - J_k/k` in floating point.
pub const PROJECTION_ATOL: f64 = 1e-12;
/// Bound on `φ(E_ji) - φ(E_ij)*` for maps built from Kraus operators.
pub const HERMITICITY_PRESERVATION_ATOL: f64 = 1e-12;
/// Bound on the transpose-map regression eigenvalue `-1`.
pub const REGRESSION_ATOL: f64 = 1e-10;
/// Trials for the positive-map falsifier regression.
pub const FALSIFIER_TRIALS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Positivity of `R ∘⊗ S`, the compression identity and the sum contraction.
    Prop4,
    /// Choi criterion: amplifications of CP maps, Kraus round trip, transpose regression.
    Cor6,
    /// Complete positivity of `S ↦ R ∘⊗ S` at level `k`.
    Cor7,
    /// Classical Schur product theorem.
    Schur,
    /// Positivity and spectrum of `r ⊗ s`.
    Kron,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Prop4, Suite::Cor6, Suite::Cor7, Suite::Schur, Suite::Kron];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop4 => "prop4",
            Suite::Cor6 => "cor6",
            Suite::Cor7 => "cor7",
            Suite::Schur => "schur",
            Suite::Kron => "kron",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Suite::Prop4 => 1,
            Suite::Cor6 => 2,
            Suite::Cor7 => 3,
            Suite::Schur => 4,
            Suite::Kron => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Dimension caps for one suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Outer size `n` (matrix side for `schur` and `kron`).
    pub max_n: usize,
    /// Block and output sizes (`p`, `q`, `m`, `d`).
    pub max_m: usize,
    /// Amplification level `k` (cor7 only).
    pub max_k: usize,
}

impl Limits {
    pub fn default_for(suite: Suite) -> Self {
        match suite {
            Suite::Prop4 => Limits { max_n: 4, max_m: 3, max_k: 1 },
            Suite::Cor6 => Limits { max_n: 3, max_m: 3, max_k: 1 },
            Suite::Cor7 => Limits { max_n: 3, max_m: 2, max_k: 3 },
            Suite::Schur => Limits { max_n: 8, max_m: 1, max_k: 1 },
            Suite::Kron => Limits { max_n: 6, max_m: 1, max_k: 1 },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub seed: Seed,
    pub instances: usize,
    /// Overrides every suite's `max_n` when set.
    pub max_n: Option<usize>,
    /// Overrides every suite's `max_m` when set.
    pub max_m: Option<usize>,
    pub tol: PsdTolerance<f64>,
}

impl CampaignConfig {
    pub fn new(seed: Seed, instances: usize) -> Self {
        Self {
            seed,
            instances,
            max_n: None,
            max_m: None,
            tol: PsdTolerance::default(),
        }
    }

    pub fn limits(&self, suite: Suite) -> Limits {
        let mut l = Limits::default_for(suite);
        if let Some(n) = self.max_n {
            l.max_n = n;
        }
        if let Some(m) = self.max_m {
            l.max_m = m;
        }
        l
    }

    fn validate(&self) -> Result<()> {
        if self.instances == 0 {
            return Err(Error::InvalidArgument("instances must be at least 1".into()));
        }
        if self.max_n == Some(0) || self.max_m == Some(0) {
            return Err(Error::InvalidArgument("dimension limits must be at least 1".into()));
        }
        Ok(())
    }
}

/// A failed check on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    /// Instance index, or `None` for suite-level regressions.
    pub instance: Option<usize>,
    pub seed: Seed,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub instances: usize,
    pub passed: usize,
    /// Smallest `(λ_min + tolerance) / tolerance` over all positivity checks:
    /// negative on failure, 1 when `λ_min = 0`.
    pub min_margin: f64,
    /// Largest deviation observed in any toleranced identity check.
    pub max_identity_error: f64,
    /// Largest deviation per toleranced check, by check name.
    pub identity_errors: BTreeMap<&'static str, f64>,
    /// Number of positivity verdicts taken.
    pub psd_checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteOutcome {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Recorder<'a> {
    tol: PsdTolerance<f64>,
    seed: Seed,
    instance: Option<usize>,
    min_margin: &'a mut f64,
    identity_errors: &'a mut BTreeMap<&'static str, f64>,
    psd_checks: &'a mut usize,
    failures: Vec<Failure>,
}

impl Recorder<'_> {
    fn fail(&mut self, check: &'static str, detail: String) {
        self.failures.push(Failure {
            instance: self.instance,
            seed: self.seed,
            check,
            detail,
        });
    }

    fn outcome<T>(&mut self, check: &'static str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(check, e.to_string());
                None
            }
        }
    }

    fn psd(&mut self, check: &'static str, a: &Matrix<f64>) -> Option<PsdReport<f64>> {
        let report = self.outcome(check, psd_check(a, self.tol))?;
        *self.psd_checks += 1;
        *self.min_margin = self.min_margin.min(report.margin() / report.tolerance_used);
        if !report.is_psd {
            self.fail(
                check,
                format!("min eigenvalue {:e} below -{:e}", report.min_eigenvalue, report.tolerance_used),
            );
        }
        Some(report)
    }

    fn exact<U: PartialEq>(&mut self, check: &'static str, got: &U, want: &U) {
        if got != want {
            self.fail(check, "structural identity not bit-exact".into());
        }
    }

    fn within(&mut self, check: &'static str, err: f64, bound: f64) {
        let worst = self.identity_errors.entry(check).or_insert(0.0);
        *worst = worst.max(err);
        // NaN deviations fail too
        if err.is_nan() || err > bound {
            self.fail(check, format!("deviation {err:e} exceeds {bound:e}"));
        }
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, config: &CampaignConfig) -> Result<SuiteOutcome> {
    config.validate()?;
    let limits = config.limits(suite);
    let base = config.seed.derive(suite.tag());
    let mut min_margin = f64::INFINITY;
    let mut identity_errors = BTreeMap::new();
    let mut psd_checks = 0;
    let mut failures = Vec::new();
    let mut passed = 0;

    for index in 0..config.instances {
        let seed = base.derive(index as u64);
        let mut rec = Recorder {
            tol: config.tol,
            seed,
            instance: Some(index),
            min_margin: &mut min_margin,
            identity_errors: &mut identity_errors,
            psd_checks: &mut psd_checks,
            failures: Vec::new(),
        };
        match suite {
            Suite::Prop4 => prop4_instance(&mut rec, seed, limits),
            Suite::Cor6 => cor6_instance(&mut rec, seed, limits),
            Suite::Cor7 => cor7_instance(&mut rec, seed, limits),
            Suite::Schur => schur_instance(&mut rec, seed, limits),
            Suite::Kron => kron_instance(&mut rec, seed, limits),
        }
        if rec.failures.is_empty() {
            passed += 1;
        }
        failures.append(&mut rec.failures);
    }

    let mut rec = Recorder {
        tol: config.tol,
        seed: base,
        instance: None,
        min_margin: &mut min_margin,
        identity_errors: &mut identity_errors,
        psd_checks: &mut psd_checks,
        failures: Vec::new(),
    };
    match suite {
        Suite::Cor6 => cor6_regression(&mut rec),
        Suite::Cor7 => projection_check(&mut rec, limits.max_k),
        _ => {}
    }
    failures.append(&mut rec.failures);

    Ok(SuiteOutcome {
        suite,
        instances: config.instances,
        passed,
        min_margin,
        max_identity_error: identity_errors.values().fold(0.0, |a: f64, &b| a.max(b)),
        identity_errors,
        psd_checks,
        failures,
    })
}

/// Runs every suite in `suites`, in order.
pub fn run_suites(suites: &[Suite], config: &CampaignConfig) -> Result<Vec<SuiteOutcome>> {
    suites.iter().map(|&s| run_suite(s, config)).collect()
}

/// PSD matrix of random rank in `1..=dim`.
fn psd_of_random_rank(rng: &mut ChaCha8Rng, dim: usize, seed: Seed) -> Result<Matrix<f64>> {
    let rank = rng.gen_range(1..=dim);
    random_psd(dim, rank, seed)
}

fn prop4_instance(rec: &mut Recorder<'_>, seed: Seed, l: Limits) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.value());
    let n = rng.gen_range(1..=l.max_n);
    let p = rng.gen_range(1..=l.max_m);
    let q = rng.gen_range(1..=l.max_m);
    let Some(r) = rec.outcome("generate", psd_of_random_rank(&mut rng, n * p, seed.derive(0)).and_then(|a| unflatten(&a, n, p))) else {
        return;
    };
    let Some(s) = rec.outcome("generate", psd_of_random_rank(&mut rng, n * q, seed.derive(1)).and_then(|a| unflatten(&a, n, q))) else {
        return;
    };
    let Some(t) = rec.outcome("tensor_schur", tensor_schur(&r, &s)) else {
        return;
    };
    let flat = flatten(&t);
    rec.psd("prop4_psd", &flat);

    // V (R ⊗ S) V* by selection and by multiplication
    if let Some(full) = rec.outcome("kron_blocks", kron_blocks(&r, &s)) {
        if let Some(sel) = rec.outcome("diag_compress", diag_compress(&full)) {
            rec.exact("proof_identity_selection", &sel, &t);
        }
        if let Some(mul) = rec.outcome("compress_by_multiplication", compress_by_multiplication(&full)) {
            rec.exact("proof_identity_multiplication", &mul, &t);
        }
    }

    // Σ r_ij ⊗ s_ij = 1_n* (R ∘⊗ S) 1_n
    if let Some(sum) = rec.outcome("sum_contract", sum_contract(&r, &s)) {
        let one = ones_column::<f64>(n, p * q);
        let contracted = &(&one.adjoint() * &flat) * &one;
        let err = sum.max_abs_diff(&contracted).unwrap_or(f64::INFINITY);
        rec.within("eq3_contraction", err, CONTRACTION_ATOL);
        rec.psd("eq3_psd", &sum);
    }

    // swapping the factors permutes the product
    if let Some(swapped) = rec.outcome("tensor_schur", tensor_schur(&s, &r)) {
        if let (Some(a), Some(b)) = (
            rec.outcome("eig", eigvals_hermitian(&flat)),
            rec.outcome("eig", eigvals_hermitian(&flatten(&swapped))),
        ) {
            let err = spectrum_distance(&a, &b);
            rec.within("swap_spectrum", err, SPECTRUM_ATOL);
        }
    }
}

fn cor6_instance(rec: &mut Recorder<'_>, seed: Seed, l: Limits) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.value());
    let n = rng.gen_range(1..=l.max_n);
    let d = rng.gen_range(1..=l.max_m);
    let m = rng.gen_range(1..=l.max_m);
    let num_kraus = rng.gen_range(1..=n * d);
    let Some(phi) = rec.outcome("generate", random_cp_map::<f64>(n, d, num_kraus, seed.derive(0))) else {
        return;
    };
    let Some(r) = rec.outcome(
        "generate",
        psd_of_random_rank(&mut rng, n * m, seed.derive(1)).and_then(|a| unflatten(&a, n, m)),
    ) else {
        return;
    };

    let hp = phi.hermiticity_preservation_defect();
    rec.within("hermiticity_preservation", hp, HERMITICITY_PRESERVATION_ATOL);

    if let Some(report) = rec.outcome("is_cp", is_cp(&phi, rec.tol)) {
        if !report.is_psd {
            rec.fail("is_cp", format!("Choi min eigenvalue {:e}", report.min_eigenvalue));
        }
    }

    if let Some(out) = rec.outcome("extend_apply", extend_apply(&phi, &r)) {
        rec.psd("cor6_forward_psd", &out);
        if let Some(via_sum) = rec.outcome("sum_contract", sum_contract(&r, &choi(&phi))) {
            rec.exact("extend_equals_sum_contract", &out, &via_sum);
        }
    }

    if let Some(ks) = rec.outcome("kraus", kraus(&phi, default_rank_tol(), rec.tol)) {
        if ks.len() > num_kraus {
            rec.fail("kraus_rank", format!("{} operators from {} generators", ks.len(), num_kraus));
        }
        if let Some(res) = rec.outcome("kraus_residual", ks.reconstruction_residual(&phi)) {
            rec.within("kraus_round_trip", res, KRAUS_RESIDUAL);
        }
    }
}

/// Transpose map on `M_2`: not CP, yet positive.
fn cor6_regression(rec: &mut Recorder<'_>) {
    let t = transpose_map::<f64>(2);
    if let Some(report) = rec.outcome("transpose_is_cp", is_cp(&t, rec.tol)) {
        if report.is_psd {
            rec.fail("transpose_is_cp", "transpose map reported CP".into());
        }
        rec.within("transpose_choi_min", (report.min_eigenvalue + 1.0).abs(), REGRESSION_ATOL);
    }
    let omega = crate::block::BlockMatrix::from_fn(2, 2, |i, j| Matrix::unit(2, i, j)).expect("2x2 units");
    if let Some(out) = rec.outcome("transpose_extend", extend_apply(&t, &omega)) {
        if let Some(v) = rec.outcome("eig", eigvals_hermitian(&out)) {
            rec.within("transpose_extend_min", (v[0] + 1.0).abs(), REGRESSION_ATOL);
        }
    }
    match positive_map_falsify(&t, FALSIFIER_TRIALS, rec.seed, rec.tol) {
        Ok(None) => {}
        Ok(Some(cx)) => rec.fail("transpose_positive", format!("spurious counterexample at trial {}", cx.trial)),
        Err(e) => rec.fail("transpose_positive", e.to_string()),
    }
}

fn cor7_instance(rec: &mut Recorder<'_>, seed: Seed, l: Limits) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.value());
    let k = rng.gen_range(1..=l.max_k);
    let n = rng.gen_range(1..=l.max_n);
    let p = rng.gen_range(1..=l.max_m);
    let q = rng.gen_range(1..=l.max_m);
    let Some(r) = rec.outcome(
        "generate",
        psd_of_random_rank(&mut rng, n * p, seed.derive(0)).and_then(|a| unflatten(&a, n, p)),
    ) else {
        return;
    };
    let Some(s_hat) = rec.outcome(
        "generate",
        psd_of_random_rank(&mut rng, k * n * q, seed.derive(1))
            .and_then(|a| unflatten(&a, k * n, q))
            .and_then(|b| BlockGrid::from_block(&b, k)),
    ) else {
        return;
    };
    let Some(out) = rec.outcome("lr_amplified", lr_amplified(&r, &s_hat)) else {
        return;
    };
    let nested = out.to_block();
    if let Some(direct) = rec.outcome("lr_as_tensor_schur", lr_as_tensor_schur(&r, &s_hat)) {
        rec.exact("cor7_structural_identity", &nested, &direct);
    }
    rec.psd("cor7_psd", &flatten(&nested));
}

fn projection_check(rec: &mut Recorder<'_>, max_k: usize) {
    for k in 1..=max_k.max(1) {
        let p = all_ones::<f64>(k).scale(&Complex::new(1.0 / k as f64, 0.0));
        let err = (&p * &p).max_abs_diff(&p).unwrap_or(f64::INFINITY);
        rec.within("ones_projection", err, PROJECTION_ATOL);
    }
}

fn schur_instance(rec: &mut Recorder<'_>, seed: Seed, l: Limits) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.value());
    let n = rng.gen_range(1..=l.max_n);
    let (Some(r), Some(s)) = (
        rec.outcome("generate", psd_of_random_rank(&mut rng, n, seed.derive(0))),
        rec.outcome("generate", psd_of_random_rank(&mut rng, n, seed.derive(1))),
    ) else {
        return;
    };
    if let Some(h) = rec.outcome("schur", schur(&r, &s)) {
        rec.psd("schur_psd", &h);
    }
}

fn kron_instance(rec: &mut Recorder<'_>, seed: Seed, l: Limits) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.value());
    let a = rng.gen_range(1..=l.max_n);
    let b = rng.gen_range(1..=l.max_n);
    let (Some(r), Some(s)) = (
        rec.outcome("generate", psd_of_random_rank(&mut rng, a, seed.derive(0))),
        rec.outcome("generate", psd_of_random_rank(&mut rng, b, seed.derive(1))),
    ) else {
        return;
    };
    let k = kron(&r, &s);
    rec.psd("kron_psd", &k);
    let (Some(lr), Some(ls), Some(lk)) = (
        rec.outcome("eig", eigvals_hermitian(&r)),
        rec.outcome("eig", eigvals_hermitian(&s)),
        rec.outcome("eig", eigvals_hermitian(&k)),
    ) else {
        return;
    };
    let mut products: Vec<f64> = lr.iter().flat_map(|x| ls.iter().map(move |y| x * y)).collect();
    products.sort_by(f64::total_cmp);
    rec.within("kron_spectrum", spectrum_distance(&products, &lk), SPECTRUM_ATOL);
}

/// Largest gap between two ascending spectra.
pub fn spectrum_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}
