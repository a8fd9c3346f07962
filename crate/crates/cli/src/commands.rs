//! Command implementations. Each returns the [`Report`] to print; the exit
//! code follows from its verdict.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use log::info;
use tschur::block::{flatten, unflatten};
use tschur::campaign::{run_suites, CampaignConfig, Suite};
use tschur::cpmaps::{choi, extend_apply, is_cp, kraus, positive_map_falsify};
use tschur::linalg::psd_check;
use tschur::schur::tensor_schur;
use tschur::{CMatrix, Error, PsdTolerance, Seed};

use crate::files::MatrixFile;
use crate::report::{Counterexample, Report, SuiteSummary, Verdict};

/// `--suite` values: one suite or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteChoice {
    One(Suite),
    All,
}

impl std::str::FromStr for SuiteChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "all" {
            Ok(SuiteChoice::All)
        } else {
            s.parse().map(SuiteChoice::One)
        }
    }
}

impl SuiteChoice {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteChoice::One(s) => vec![s],
            SuiteChoice::All => Suite::ALL.to_vec(),
        }
    }
}

fn load(path: &Path) -> Result<MatrixFile> {
    Ok(MatrixFile::read(path)?)
}

fn save(file: &MatrixFile, out: Option<&PathBuf>, report: &mut Report) -> Result<()> {
    if let Some(path) = out {
        file.write(path)?;
        report.output = Some(path.display().to_string());
    }
    Ok(())
}

/// Attaches a positivity summary when the matrix is Hermitian enough to have one.
fn describe(report: Report, a: &CMatrix, tol: PsdTolerance<f64>) -> Report {
    let report = Report {
        shape: Some([a.rows(), a.cols()]),
        ..report
    };
    match psd_check(a, tol) {
        Ok(p) => report.with_psd(&p),
        Err(_) => Report {
            hermiticity_defect: a.hermiticity_defect().ok(),
            ..report
        },
    }
}

pub fn psd(file: &Path, tol: PsdTolerance<f64>) -> Result<Report> {
    let a = load(file)?.to_matrix()?;
    let p = psd_check(&a, tol).context("psd check")?;
    let verdict = if p.is_psd { Verdict::Psd } else { Verdict::NotPsd };
    Ok(Report {
        shape: Some([a.rows(), a.cols()]),
        ..Report::new("psd", verdict).with_psd(&p)
    })
}

pub fn tschur(r: &Path, s: &Path, out: Option<&PathBuf>, tol: PsdTolerance<f64>) -> Result<Report> {
    let r = load(r)?.to_block()?;
    let s = load(s)?.to_block()?;
    let t = tensor_schur(&r, &s)?;
    let mut report = describe(Report::new("tschur", Verdict::Pass), &flatten(&t), tol);
    save(&MatrixFile::from_block(&t), out, &mut report)?;
    Ok(report)
}

pub fn choi_cmd(map: &Path, out: Option<&PathBuf>, tol: PsdTolerance<f64>) -> Result<Report> {
    let phi = load(map)?.to_map()?;
    let c = choi(&phi);
    let mut report = describe(Report::new("choi", Verdict::Pass), &flatten(&c), tol);
    save(&MatrixFile::from_block(&c), out, &mut report)?;
    Ok(report)
}

pub fn cp_check(map: &Path, tol: PsdTolerance<f64>) -> Result<Report> {
    let phi = load(map)?.to_map()?;
    let p = is_cp(&phi, tol).context("Choi matrix is not Hermitian; the map does not preserve Hermiticity")?;
    let verdict = if p.is_psd { Verdict::Cp } else { Verdict::NotCp };
    Ok(Report::new("cp-check", verdict).with_psd(&p))
}

pub fn kraus_cmd(map: &Path, out: Option<&PathBuf>, rank_tol: f64, tol: PsdTolerance<f64>) -> Result<Report> {
    let phi = load(map)?.to_map()?;
    match kraus(&phi, rank_tol, tol) {
        Ok(ks) => {
            let mut report = Report::new("kraus", Verdict::Pass);
            report.kraus_operators = Some(ks.len());
            report.reconstruction_residual = Some(ks.reconstruction_residual(&phi)?);
            save(&MatrixFile::from_kraus(&ks), out, &mut report)?;
            Ok(report)
        }
        Err(Error::NotCompletelyPositive { .. }) => {
            let p = is_cp(&phi, tol)?;
            Ok(Report::new("kraus", Verdict::NotCp).with_psd(&p))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn extend(map: &Path, block: &Path, out: Option<&PathBuf>, tol: PsdTolerance<f64>) -> Result<Report> {
    let phi = load(map)?.to_map()?;
    let r = load(block)?.to_block()?;
    let x = extend_apply(&phi, &r)?;
    let mut report = describe(Report::new("extend", Verdict::Pass), &x, tol);
    // output index (α, s) ↦ α·d + s: a BlockMatrix(m, d)
    let as_block = unflatten(&x, r.m(), phi.d())?;
    save(&MatrixFile::from_block(&as_block), out, &mut report)?;
    Ok(report)
}

pub fn falsify(map: &Path, trials: usize, seed: Seed, tol: PsdTolerance<f64>) -> Result<Report> {
    let phi = load(map)?.to_map()?;
    let found = positive_map_falsify(&phi, trials, seed, tol)?;
    let mut report = Report::new("falsify", if found.is_some() { Verdict::Fail } else { Verdict::Pass });
    report.seed = Some(seed.value());
    report.trials = Some(trials);
    report.counterexample = found.map(|c| Counterexample {
        trial: c.trial,
        vector: c.vector.iter().map(|z| [z.re, z.im]).collect(),
        min_eigenvalue: c.min_eigenvalue,
        hermiticity_defect: c.hermiticity_defect,
    });
    Ok(report)
}

pub struct FuzzArgs {
    pub suite: SuiteChoice,
    pub seed: Seed,
    pub instances: usize,
    pub max_n: Option<usize>,
    pub max_m: Option<usize>,
    pub tol: PsdTolerance<f64>,
}

pub fn fuzz(args: &FuzzArgs) -> Result<Report> {
    let config = CampaignConfig {
        seed: args.seed,
        instances: args.instances,
        max_n: args.max_n,
        max_m: args.max_m,
        tol: args.tol,
    };
    let suites = args.suite.suites();
    let mut summaries = Vec::with_capacity(suites.len());
    for outcome in run_suites(&suites, &config)? {
        info!("suite {}: {}/{} instances passed", outcome.suite, outcome.passed, outcome.instances);
        summaries.push(SuiteSummary::from(&outcome));
    }
    let all_pass = summaries.iter().all(|s| s.failures.is_empty());
    let mut report = Report::new("fuzz", if all_pass { Verdict::Pass } else { Verdict::Fail });
    report.seed = Some(args.seed.value());
    report.instances = Some(args.instances);
    report.suites = Some(summaries);
    Ok(report)
}
