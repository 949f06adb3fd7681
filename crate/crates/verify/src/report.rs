//! Machine-readable claim reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Resolved claim parameters, defaults included.
pub type Params = BTreeMap<String, u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { reason: String },
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::Skipped { .. } => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub schema: u32,
    pub claim_id: String,
    pub parameters: Params,
    pub verdict: Verdict,
    /// One-line human summary of what was established.
    pub summary: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    /// Wall-clock milliseconds; only recorded on request so that reports stay
    /// byte-stable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Several reports in run order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSet {
    pub schema: u32,
    pub reports: Vec<ClaimReport>,
}

impl ReportSet {
    pub fn new(reports: Vec<ClaimReport>) -> Self {
        ReportSet {
            schema: SCHEMA_VERSION,
            reports,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.reports.iter().any(|r| r.verdict.is_fail())
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}
