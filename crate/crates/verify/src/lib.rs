//! Claim verification on top of `pathchrom-core`: a registry of checkable
//! statements, their reports, and the search-free certificate checks.

pub mod claims;
pub mod report;

pub use claims::{default_plan, recheck, run_claim, run_plan, RunOptions, VerifyError, CLAIMS};
pub use report::{ClaimReport, Params, ReportSet, Verdict};
