//! Verification reports: per-check records plus deterministic JSON, CSV and text output.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, VerifyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
        })
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// A closed-form value stated as a theorem or lemma.
    Formula,
    /// A value from a printed parameter table.
    PrintedTable,
    /// A lower or upper bound; `expected` holds the inequality.
    Bound,
    /// An independent count or construction.
    Enumeration,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Formula => "formula",
            Source::PrintedTable => "printed-table",
            Source::Bound => "bound",
            Source::Enumeration => "enumeration",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Quoted statement the check exercises.
    pub anchor: String,
    pub expected: String,
    pub expected_source: Source,
    pub computed: Option<String>,
    pub status: Status,
    /// The budget that was exceeded, for skipped checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        source: Source,
        expected: impl fmt::Display,
    ) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            expected: expected.to_string(),
            expected_source: source,
            computed: None,
            status: Status::Fail,
            budget: None,
            detail: None,
            elapsed_ms: 0,
        }
    }

    pub fn outcome(mut self, computed: impl fmt::Display, pass: bool) -> Self {
        self.computed = Some(computed.to_string());
        self.status = if pass { Status::Pass } else { Status::Fail };
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn skipped(mut self, budget: u128) -> Self {
        self.status = Status::SkippedBudget;
        self.budget = Some(budget);
        self
    }

    /// Records a core error: budget overruns skip, anything else fails.
    pub fn error(self, e: &asg_core::Error) -> Self {
        match e {
            asg_core::Error::BudgetExceeded { required, budget } => {
                self.skipped(*budget).detail(format!("requires {required} operations"))
            }
            other => {
                let mut c = self.detail(other.to_string());
                c.status = Status::Fail;
                c
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub ell: Vec<usize>,
    pub q_list: Vec<u32>,
    pub budget: u128,
    pub workers: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub run_id: String,
    pub command: String,
    pub parameters: Parameters,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    /// The run id hashes the command and every parameter except the worker count.
    pub fn new(command: impl Into<String>, parameters: Parameters) -> Self {
        let command = command.into();
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        let keyed = Parameters { workers: 0, ..parameters.clone() };
        hasher.update(serde_json::to_vec(&keyed).expect("parameters serialize"));
        let digest = format!("{:x}", hasher.finalize());
        VerificationReport { checks: Vec::new(), run_id: digest[..16].to_string(), command, parameters, elapsed_ms: 0 }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Times `body` and records the check it returns.
    pub fn timed(&mut self, body: impl FnOnce() -> Check) {
        let start = Instant::now();
        let mut check = body();
        check.elapsed_ms = start.elapsed().as_millis() as u64;
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.elapsed_ms += other.elapsed_ms;
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Copy with timings and the worker count cleared, for reproducibility comparisons.
    pub fn normalized(&self) -> Self {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        r.parameters.workers = 0;
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(VerifyError::UnsupportedFormat(other.to_string())),
        }
    }
}

pub const CSV_COLUMNS: [&str; 9] =
    ["name", "anchor", "expected", "expected_source", "computed", "status", "budget", "detail", "elapsed_ms"];

pub fn emit(report: &VerificationReport, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_COLUMNS)?;
            for c in &report.checks {
                w.write_record([
                    c.name.clone(),
                    c.anchor.clone(),
                    c.expected.clone(),
                    c.expected_source.to_string(),
                    c.computed.clone().unwrap_or_default(),
                    c.status.to_string(),
                    c.budget.map(|b| b.to_string()).unwrap_or_default(),
                    c.detail.clone().unwrap_or_default(),
                    c.elapsed_ms.to_string(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| VerifyError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Text => Ok(text(report)),
    }
}

fn text(report: &VerificationReport) -> String {
    use std::fmt::Write as _;
    let p = &report.parameters;
    let mut out = String::new();
    let _ = writeln!(out, "run {} ({})", report.run_id, report.command);
    let _ = writeln!(out, "ell {:?}, q {:?}, budget {}, workers {}", p.ell, p.q_list, p.budget, p.workers);
    for c in &report.checks {
        let computed = c.computed.as_deref().unwrap_or("-");
        let _ = write!(
            out,
            "[{}] {}: computed {}, expected {} ({})",
            c.status, c.name, computed, c.expected, c.expected_source
        );
        if let Some(b) = c.budget {
            let _ = write!(out, ", budget {b}");
        }
        if let Some(d) = &c.detail {
            let _ = write!(out, "; {d}");
        }
        let _ = writeln!(out, " [{}]", c.anchor);
    }
    let _ = writeln!(
        out,
        "{} checks: {} pass, {} fail, {} skipped-budget ({} ms)",
        report.checks.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::SkippedBudget),
        report.elapsed_ms
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Parameters {
        Parameters { ell: vec![2], q_list: vec![3], budget: 100, workers: 4, seed: None, samples: None }
    }

    #[test]
    fn empty_report_json() {
        let r = VerificationReport::new("check", params());
        let json = emit(&r, Format::Json).unwrap();
        let compact: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(serde_json::to_string(&compact).unwrap().starts_with("{\"checks\":[],"));
        assert_eq!(compact["parameters"]["q_list"], serde_json::json!([3]));
    }

    #[test]
    fn statuses_serialize() {
        let mut r = VerificationReport::new("check", params());
        r.push(Check::new("a", "x", Source::Formula, 1).outcome(1, true));
        r.push(
            Check::new("b", "x", Source::Formula, 1).error(&asg_core::Error::BudgetExceeded { required: 7, budget: 5 }),
        );
        let v: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][1]["status"], "skipped-budget");
        assert_eq!(v["checks"][1]["budget"], 5);
        assert!(r.passed());
        let back: VerificationReport = serde_json::from_str(&emit(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn run_id_ignores_workers() {
        let a = VerificationReport::new("check", params());
        let b = VerificationReport::new("check", Parameters { workers: 1, ..params() });
        let c = VerificationReport::new("check", Parameters { budget: 7, ..params() });
        assert_eq!(a.run_id, b.run_id);
        assert_ne!(a.run_id, c.run_id);
    }

    #[test]
    fn csv_and_text() {
        let mut r = VerificationReport::new("check", params());
        r.push(Check::new("a, b", "quote", Source::Bound, ">= 2").outcome(3, true));
        let csv = emit(&r, Format::Csv).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        assert_eq!(lines.next().unwrap(), "\"a, b\",quote,>= 2,bound,3,pass,,,0");
        assert!(emit(&r, Format::Text).unwrap().contains("[pass] a, b: computed 3"));
        assert!(matches!("xml".parse::<Format>(), Err(VerifyError::UnsupportedFormat(_))));
    }
}
