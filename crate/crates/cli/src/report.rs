use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::CheckId;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Configuration or resource problem; the claim was not evaluated.
    Error,
    /// The check does not apply at this `n`.
    Skipped,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Error => "ERROR",
            Outcome::Skipped => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: CheckId,
    pub claim: String,
    pub n: usize,
    pub parameters: BTreeMap<String, Value>,
    pub outcome: Outcome,
    pub details: BTreeMap<String, Value>,
    pub message: Option<String>,
    /// Concrete counterexample when the outcome is `fail`.
    pub witness: Option<Value>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportRecord {
    pub directory: String,
    pub files: Vec<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub n_min: usize,
    pub n_max: usize,
    pub checks: Vec<CheckRecord>,
    pub export: Option<ExportRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(n_min: usize, n_max: usize, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in &checks {
            match c.outcome {
                Outcome::Pass => summary.passed += 1,
                Outcome::Fail => summary.failed += 1,
                Outcome::Error => summary.errors += 1,
                Outcome::Skipped => summary.skipped += 1,
            }
        }
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            n_min,
            n_max,
            checks,
            export: None,
            summary,
        }
    }

    /// 0 when every check passed, 1 on any failed claim, 2 on configuration,
    /// resource or export errors without failures.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            1
        } else if self.summary.errors > 0 || self.export.as_ref().is_some_and(|e| e.error.is_some())
        {
            2
        } else {
            0
        }
    }

    /// Copy with every timing field zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.wall_time_ms = 0.0;
        }
        r
    }

    pub fn find(&self, id: CheckId, n: usize) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id && c.n == n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "cutmet {} verification report, n = {}..{}",
            self.tool_version, self.n_min, self.n_max
        );
        let _ = writeln!(
            out,
            "{:<12} {:>3}  {:<6} {:>10}  details",
            "check", "n", "result", "time(ms)"
        );
        for c in &self.checks {
            let mut detail: Vec<String> =
                c.details.iter().map(|(k, v)| format!("{k}={v}")).collect();
            if let Some(m) = &c.message {
                detail.push(m.clone());
            }
            let _ = writeln!(
                out,
                "{:<12} {:>3}  {:<6} {:>10.1}  {}",
                c.id.as_str(),
                c.n,
                c.outcome.as_str(),
                c.wall_time_ms,
                detail.join(" ")
            );
        }
        if let Some(e) = &self.export {
            match &e.error {
                None => {
                    let _ = writeln!(out, "exported {} files to {}", e.files.len(), e.directory);
                }
                Some(err) => {
                    let _ = writeln!(out, "export to {} failed: {err}", e.directory);
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary: {} checks, {} passed, {} failed, {} errors, {} skipped",
            s.total, s.passed, s.failed, s.errors, s.skipped
        );
        out
    }
}
