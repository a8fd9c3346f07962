//! Single-line JSON reports written to standard output.

use std::collections::BTreeMap;

use serde::Serialize;
use tschur::campaign::SuiteOutcome;
use tschur::CPsdReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Psd,
    NotPsd,
    Cp,
    NotCp,
    Pass,
    Fail,
    Error,
}

impl Verdict {
    /// 0 = affirmative, 1 = negative, 2 = error.
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Psd | Verdict::Cp | Verdict::Pass => 0,
            Verdict::NotPsd | Verdict::NotCp | Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub vector: Vec<[f64; 2]>,
    pub min_eigenvalue: f64,
    pub hermiticity_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub instances: usize,
    pub passed: usize,
    pub psd_checks: usize,
    pub min_margin: f64,
    pub max_identity_error: f64,
    pub identity_errors: BTreeMap<String, f64>,
    pub failures: Vec<FailureSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<usize>,
    pub seed: u64,
    pub check: String,
    pub detail: String,
}

impl From<&SuiteOutcome> for SuiteSummary {
    fn from(o: &SuiteOutcome) -> Self {
        SuiteSummary {
            suite: o.suite.name().to_string(),
            instances: o.instances,
            passed: o.passed,
            psd_checks: o.psd_checks,
            min_margin: o.min_margin,
            max_identity_error: o.max_identity_error,
            identity_errors: o.identity_errors.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            failures: o
                .failures
                .iter()
                .map(|f| FailureSummary {
                    instance: f.instance,
                    seed: f.seed.value(),
                    check: f.check.to_string(),
                    detail: f.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_psd: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_eigenvalue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_eigenvalue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hermiticity_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kraus_operators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconstruction_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<SuiteSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &'static str, verdict: Verdict) -> Self {
        Report {
            command,
            verdict,
            error: None,
            is_psd: None,
            min_eigenvalue: None,
            max_eigenvalue: None,
            tolerance: None,
            hermiticity_defect: None,
            shape: None,
            output: None,
            kraus_operators: None,
            reconstruction_residual: None,
            seed: None,
            instances: None,
            trials: None,
            suites: None,
            counterexample: None,
            elapsed_ms: None,
        }
    }

    pub fn error(command: &'static str, message: impl Into<String>) -> Self {
        let mut r = Report::new(command, Verdict::Error);
        r.error = Some(message.into());
        r
    }

    /// Copies the eigenvalue fields of a positivity verdict.
    pub fn with_psd(mut self, p: &CPsdReport) -> Self {
        self.is_psd = Some(p.is_psd);
        self.min_eigenvalue = Some(p.min_eigenvalue);
        self.max_eigenvalue = Some(p.max_eigenvalue);
        self.tolerance = Some(p.tolerance_used);
        self.hermiticity_defect = Some(p.hermiticity_defect);
        self
    }

    pub fn to_line(&self) -> String {
        // non-finite floats become null; the report is always valid JSON
        serde_json::to_string(self).expect("report serializes")
    }
}
