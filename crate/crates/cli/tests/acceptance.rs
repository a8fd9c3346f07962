//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line per
//! criterion, and exits non-zero if any fails.
//!
//!     cargo test -p tschur-cli --test acceptance

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex;
use tschur::block::{compress_by_multiplication, diag_compress, flatten, kron_blocks, unflatten, BlockGrid};
use tschur::cpmaps::{default_rank_tol, extend_apply, is_cp, kraus, positive_map_falsify, transpose_map};
use tschur::linalg::{eigvals_hermitian, kron, psd_check};
use tschur::randgen::{random_cp_map, random_psd};
use tschur::schur::{all_ones, lr_amplified, lr_as_tensor_schur, ones_column, schur, sum_contract, tensor_schur};
use tschur::{BlockMatrix, CBlockMatrix, CMatrix, PsdTolerance, Seed};

const BASE_SEED: Seed = Seed(0x5EED_2024);

const PROP4_INSTANCES: usize = 500;
const PROP4_MAX_RUNTIME: Duration = Duration::from_secs(10);
const EQ3_INSTANCES: usize = 200;
const EQ3_ATOL: f64 = 1e-12;
const COR6_INSTANCES: usize = 300;
const REGRESSION_ATOL: f64 = 1e-10;
const FALSIFIER_TRIALS: usize = 1000;
const COR7_INSTANCES: usize = 200;
const PROJECTION_ATOL: f64 = 1e-12;
const SCHUR_INSTANCES: usize = 500;
const KRAUS_INSTANCES: usize = 100;
const KRAUS_RESIDUAL: f64 = 1e-8;
const KRON_INSTANCES: usize = 200;
const SPECTRUM_ATOL: f64 = 1e-8;
const CLI_MAX_RUNTIME: Duration = Duration::from_secs(60);

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn tol() -> PsdTolerance<f64> {
    // rtol 1e-10 (times ‖·‖_F), atol 1e-12
    PsdTolerance::new(1e-10, 1e-12)
}

fn seed(criterion: u64, instance: usize) -> Seed {
    BASE_SEED.derive(criterion).derive(instance as u64)
}

/// PSD block matrix with rank cycling through `1..=n·m`.
fn block_psd(n: usize, m: usize, instance: usize, s: Seed) -> CBlockMatrix {
    let side = n * m;
    let rank = 1 + instance % side;
    unflatten(&random_psd(side, rank, s).unwrap(), n, m).unwrap()
}

fn psd_margin(a: &CMatrix) -> Result<f64, String> {
    let r = psd_check(a, tol()).map_err(|e| e.to_string())?;
    if r.is_psd {
        Ok(r.min_eigenvalue + r.tolerance_used)
    } else {
        Err(format!("λ_min {:e} < -{:e}", r.min_eigenvalue, r.tolerance_used))
    }
}

/// Instance `i` of the positivity campaign: `(n, p, q)` cycles all 36 shapes.
fn prop4_instance(i: usize) -> (CBlockMatrix, CBlockMatrix) {
    let n = 1 + i % 4;
    let p = 1 + (i / 4) % 3;
    let q = 1 + (i / 12) % 3;
    let s = seed(1, i);
    (block_psd(n, p, i, s.derive(0)), block_psd(n, q, i / 3, s.derive(1)))
}

fn prop4() -> Verdict {
    let start = Instant::now();
    let mut worst = f64::INFINITY;
    for i in 0..PROP4_INSTANCES {
        let (r, s) = prop4_instance(i);
        match psd_margin(&flatten(&tensor_schur(&r, &s).unwrap())) {
            Ok(m) => worst = worst.min(m),
            Err(e) => return fail(format!("instance {i}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > PROP4_MAX_RUNTIME {
        return fail(format!("runtime {elapsed:?} exceeds {PROP4_MAX_RUNTIME:?}"));
    }
    ok(format!("{PROP4_INSTANCES} instances, worst margin {worst:e}, {elapsed:?}"))
}

fn proof_identity() -> Verdict {
    for i in 0..PROP4_INSTANCES {
        let (r, s) = prop4_instance(i);
        let t = tensor_schur(&r, &s).unwrap();
        let full = kron_blocks(&r, &s).unwrap();
        if diag_compress(&full).unwrap() != t {
            return fail(format!("instance {i}: selection differs"));
        }
        if compress_by_multiplication(&full).unwrap() != t {
            return fail(format!("instance {i}: V(R⊗S)V* differs"));
        }
    }
    ok(format!("{PROP4_INSTANCES} instances bit-exact by selection and by multiplication"))
}

fn eq3() -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..EQ3_INSTANCES {
        let (r, s) = prop4_instance(i);
        let t = flatten(&tensor_schur(&r, &s).unwrap());
        let one = ones_column::<f64>(r.n(), r.m() * s.m());
        let contracted = &(&one.adjoint() * &t) * &one;
        let sum = sum_contract(&r, &s).unwrap();
        let err = sum.max_abs_diff(&contracted).unwrap();
        worst = worst.max(err);
        if err > EQ3_ATOL {
            return fail(format!("instance {i}: contraction error {err:e}"));
        }
        if let Err(e) = psd_margin(&sum) {
            return fail(format!("instance {i}: {e}"));
        }
    }
    ok(format!("{EQ3_INSTANCES} instances, max entry error {worst:e}"))
}

fn cor6_forward() -> Verdict {
    for i in 0..COR6_INSTANCES {
        let (n, d, m) = (1 + i % 3, 1 + (i / 3) % 3, 1 + (i / 9) % 3);
        let s = seed(4, i);
        let phi = random_cp_map::<f64>(n, d, 1 + i % (n * d), s.derive(0)).unwrap();
        let r = block_psd(n, m, i, s.derive(1));
        if let Err(e) = psd_margin(&extend_apply(&phi, &r).unwrap()) {
            return fail(format!("instance {i} (n={n}, d={d}, m={m}): {e}"));
        }
    }
    ok(format!("{COR6_INSTANCES} (CP map, PSD R) pairs"))
}

fn cor6_converse() -> Verdict {
    let t = transpose_map::<f64>(2);
    let report = is_cp(&t, tol()).unwrap();
    if report.is_psd || (report.min_eigenvalue + 1.0).abs() > REGRESSION_ATOL {
        return fail(format!("is_cp: {report:?}"));
    }
    let omega = BlockMatrix::from_fn(2, 2, |i, j| CMatrix::unit(2, i, j)).unwrap();
    let omega_min = eigvals_hermitian(&flatten(&omega)).unwrap()[0];
    let out = extend_apply(&t, &omega).unwrap();
    let out_min = eigvals_hermitian(&out).unwrap()[0];
    if omega_min < -REGRESSION_ATOL || (out_min + 1.0).abs() > REGRESSION_ATOL {
        return fail(format!("Ω min {omega_min:e}, image min {out_min:e}"));
    }
    if let Some(cx) = positive_map_falsify(&t, FALSIFIER_TRIALS, seed(5, 0), tol()).unwrap() {
        return fail(format!("falsifier reported trial {}", cx.trial));
    }
    ok(format!(
        "Choi λ_min {:.12}, amplified λ_min {out_min:.12}, no counterexample in {FALSIFIER_TRIALS} trials",
        report.min_eigenvalue
    ))
}

fn cor7() -> Verdict {
    for i in 0..COR7_INSTANCES {
        let (k, n, p, q) = (1 + i % 3, 1 + (i / 3) % 3, 1 + (i / 9) % 2, 1 + (i / 18) % 2);
        let s = seed(6, i);
        let r = block_psd(n, p, i, s.derive(0));
        let s_hat = BlockGrid::from_block(&block_psd(k * n, q, i / 2, s.derive(1)), k).unwrap();
        let out = lr_amplified(&r, &s_hat).unwrap().to_block();
        if out != lr_as_tensor_schur(&r, &s_hat).unwrap() {
            return fail(format!("instance {i}: (J_k ⊗ R) ∘⊗ Ŝ differs"));
        }
        if let Err(e) = psd_margin(&flatten(&out)) {
            return fail(format!("instance {i}: {e}"));
        }
    }
    for k in 1..=3 {
        let p = all_ones::<f64>(k).scale(&Complex::new(1.0 / k as f64, 0.0));
        let err = (&p * &p).max_abs_diff(&p).unwrap();
        if err > PROJECTION_ATOL {
            return fail(format!("(J_{k}/{k})² error {err:e}"));
        }
    }
    ok(format!("{COR7_INSTANCES} instances bit-exact and PSD; J_k/k idempotent for k ≤ 3"))
}

fn classical_schur() -> Verdict {
    for i in 0..SCHUR_INSTANCES {
        let n = 1 + i % 8;
        let s = seed(7, i);
        let a = random_psd::<f64>(n, 1 + i % n, s.derive(0)).unwrap();
        let b = random_psd::<f64>(n, 1 + (i / 8) % n, s.derive(1)).unwrap();
        if let Err(e) = psd_margin(&schur(&a, &b).unwrap()) {
            return fail(format!("instance {i}: {e}"));
        }
    }
    ok(format!("{SCHUR_INSTANCES} pairs, n ≤ 8"))
}

fn kraus_round_trip() -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..KRAUS_INSTANCES {
        let (n, d) = (1 + i % 3, 1 + (i / 3) % 3);
        let phi = random_cp_map::<f64>(n, d, 1 + i % (n * d), seed(8, i)).unwrap();
        let ks = match kraus(&phi, default_rank_tol(), tol()) {
            Ok(ks) => ks,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        let res = ks.reconstruction_residual(&phi).unwrap();
        worst = worst.max(res);
        if res > KRAUS_RESIDUAL {
            return fail(format!("instance {i}: residual {res:e}"));
        }
    }
    ok(format!("{KRAUS_INSTANCES} maps, max residual {worst:e}"))
}

fn kron_positivity() -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..KRON_INSTANCES {
        let (a, b) = (1 + i % 6, 1 + (i / 6) % 6);
        let s = seed(9, i);
        let r = random_psd::<f64>(a, 1 + i % a, s.derive(0)).unwrap();
        let t = random_psd::<f64>(b, 1 + (i / 2) % b, s.derive(1)).unwrap();
        let k = kron(&r, &t);
        if let Err(e) = psd_margin(&k) {
            return fail(format!("instance {i}: {e}"));
        }
        let lr = eigvals_hermitian(&r).unwrap();
        let lt = eigvals_hermitian(&t).unwrap();
        let mut products: Vec<f64> = lr.iter().flat_map(|x| lt.iter().map(move |y| x * y)).collect();
        products.sort_by(f64::total_cmp);
        let lk = eigvals_hermitian(&k).unwrap();
        let err = products.iter().zip(&lk).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        worst = worst.max(err);
        if err > SPECTRUM_ATOL {
            return fail(format!("instance {i}: spectrum error {err:e}"));
        }
    }
    ok(format!("{KRON_INSTANCES} pairs, max spectrum error {worst:e}"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cli_end_to_end() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_tschur");
    let start = Instant::now();
    let cp = Command::new(bin).arg("cp-check").arg(fixture("transpose_map.json")).output().unwrap();
    if cp.status.code() != Some(1) {
        return fail(format!("cp-check exit {:?}", cp.status.code()));
    }
    let fuzz = || {
        Command::new(bin)
            .args(["fuzz", "--suite", "all", "--seed", "42", "--instances", "100"])
            .output()
            .unwrap()
    };
    let first = fuzz();
    let second = fuzz();
    let elapsed = start.elapsed();
    if first.status.code() != Some(0) || second.status.code() != Some(0) {
        return fail(format!(
            "fuzz exit {:?}/{:?}: {}",
            first.status.code(),
            second.status.code(),
            String::from_utf8_lossy(&first.stdout)
        ));
    }
    if first.stdout != second.stdout {
        return fail("fuzz reports differ between runs".into());
    }
    if elapsed > CLI_MAX_RUNTIME {
        return fail(format!("wall time {elapsed:?} exceeds {CLI_MAX_RUNTIME:?}"));
    }
    ok(format!("cp-check exit 1, fuzz exit 0 with identical reports, {elapsed:?}"))
}

fn ok(detail: String) -> Verdict {
    Verdict { pass: true, detail }
}

fn fail(detail: String) -> Verdict {
    Verdict { pass: false, detail }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("tensorial Schur product positivity", prop4),
        ("compression identity V(R⊗S)V* = R∘⊗S", proof_identity),
        ("sum contraction through 1_n", eq3),
        ("Choi criterion, forward direction", cor6_forward),
        ("Choi criterion, transpose-map regression", cor6_converse),
        ("Schur multiplier L_R is CP", cor7),
        ("classical Schur product theorem", classical_schur),
        ("Kraus round trip", kraus_round_trip),
        ("Kronecker positivity and spectrum", kron_positivity),
        ("CLI end-to-end", cli_end_to_end),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let v = run();
        if !v.pass {
            failed += 1;
        }
        println!("{} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
