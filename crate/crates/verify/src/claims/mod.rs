//! Claim registry. Each claim checks one statement at a concrete size and
//! returns a certificate that [`recheck`] can validate without searching.

mod certificate;
mod cycles;
mod mycielski;
mod oracle;
mod products;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use pathchrom_core::dp::DpConfig;
use pathchrom_core::{Error as CoreError, Execution};
use serde_json::Value;
use thiserror::Error;

use crate::report::{ClaimReport, Params, Verdict, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown claim `{0}` (try `pathchrom verify list`)")]
    UnknownClaim(String),
    #[error("claim `{claim}` has no parameter `{name}`; it takes: {accepted}")]
    UnknownParameter {
        claim: String,
        name: String,
        accepted: String,
    },
    #[error("claim `{claim}`: {source}")]
    Invalid { claim: String, source: CoreError },
    #[error("certificate rejected: {0}")]
    Certificate(String),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub size_override: bool,
    /// Replaces the default `seed` of randomized claims.
    pub seed: Option<u64>,
    /// Record wall-clock time in reports.
    pub timings: bool,
    pub execution: Execution,
}

pub(crate) struct Ctx<'a> {
    params: &'a Params,
    opts: &'a RunOptions,
}

impl Ctx<'_> {
    fn get(&self, key: &str) -> u64 {
        self.params[key]
    }

    fn usize(&self, key: &str) -> usize {
        self.params[key] as usize
    }

    fn dp(&self) -> DpConfig {
        DpConfig {
            execution: self.opts.execution,
            size_override: self.opts.size_override,
        }
    }
}

pub(crate) struct Outcome {
    verdict: Verdict,
    summary: String,
    certificate: Option<Value>,
}

impl Outcome {
    /// Pass when `ok`, otherwise fail with `summary` as the reason.
    fn judge(ok: bool, summary: String, certificate: Value) -> Outcome {
        let verdict = if ok {
            Verdict::Pass
        } else {
            Verdict::Fail {
                reason: summary.clone(),
            }
        };
        Outcome {
            verdict,
            summary,
            certificate: Some(certificate),
        }
    }

    fn skipped(reason: String) -> Outcome {
        Outcome {
            verdict: Verdict::Skipped {
                reason: reason.clone(),
            },
            summary: reason,
            certificate: None,
        }
    }
}

type Runner = fn(&Ctx) -> pathchrom_core::Result<Outcome>;
type Rechecker = fn(&Params, &Value) -> Result<(), String>;

pub struct ClaimInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub defaults: &'static [(&'static str, u64)],
    run: Runner,
    recheck: Rechecker,
}

pub static CLAIMS: &[ClaimInfo] = &[
    ClaimInfo {
        id: "lemma1-conversion",
        statement: "the last-bag enumeration of a path decomposition D induces P_σ with χ(P_σ) <= χ(D)",
        defaults: &[("seed", 1), ("samples", 500), ("max_n", 6)],
        run: oracle::conversion,
        recheck: oracle::recheck_conversion,
    },
    ClaimInfo {
        id: "lemma-cycle-no-special",
        statement: "odd cycles C_n (n >= 5) have χ_P = 2 and no special enumeration",
        defaults: &[("n", 5)],
        run: cycles::no_special,
        recheck: cycles::recheck_no_special,
    },
    ClaimInfo {
        id: "lemma-star-decomp",
        statement: "the star tree-decomposition of R_m(C_n) (n >= 4) is valid with chromatic number 2",
        defaults: &[("n", 5), ("m", 9)],
        run: cycles::star,
        recheck: cycles::recheck_star,
    },
    ClaimInfo {
        id: "corollary-connectivity",
        statement: "R_m(C_n) is k-connected for k <= n and m >= n + 4",
        defaults: &[("n", 5), ("m", 9), ("k", 5)],
        run: cycles::connectivity,
        recheck: cycles::recheck_connectivity,
    },
    ClaimInfo {
        id: "lemma-mycielski-embed",
        statement: "M_r contains R_m(M_n) as an induced subgraph for r >= m + n",
        defaults: &[("n", 2), ("m", 2), ("r", 4)],
        run: mycielski::embed,
        recheck: mycielski::recheck_embed,
    },
    ClaimInfo {
        id: "thm1-k2",
        statement: "K_2 has a special enumeration, so χ_P(R_m(K_2)) = 2 for m >= 6",
        defaults: &[("m", 6)],
        run: products::k2,
        recheck: products::recheck_k2,
    },
    ClaimInfo {
        id: "thm1-upper-mu",
        statement: "the enumeration μ built from a cyclic order of C_n gives χ(P_μ) <= χ_P(C_n) + 1 on R_m(C_n)",
        defaults: &[("n", 5), ("m", 9)],
        run: cycles::upper_mu,
        recheck: cycles::recheck_upper_mu,
    },
    ClaimInfo {
        id: "thm1-cycle-reduced",
        statement: "exact χ_P(R_m(C_n)) by the subset DP at sizes below the theorem's hypothesis",
        defaults: &[("n", 5), ("m", 3)],
        run: cycles::reduced,
        recheck: cycles::recheck_reduced,
    },
    ClaimInfo {
        id: "thm1-cycle-lower",
        statement: "χ_P(R_m(C_n)) = 3 for odd n >= 5 and m >= n + 4",
        defaults: &[("n", 5), ("m", 9)],
        run: cycles::lower,
        recheck: cycles::recheck_lower,
    },
    ClaimInfo {
        id: "thm2-smallscale",
        statement: "R_m(K_2) has no special enumeration (l = 0), or χ_P(R_l(R_m(K_2))) > 2 (l > 0)",
        defaults: &[("m", 6), ("l", 0)],
        run: products::second,
        recheck: products::recheck_second,
    },
    ClaimInfo {
        id: "dp-vs-bruteforce",
        statement: "the subset DP agrees with exhaustive enumeration on small graphs",
        defaults: &[("seed", 1), ("samples", 200), ("n", 7), ("exhaustive_max", 6)],
        run: oracle::dp_vs_brute,
        recheck: oracle::recheck_dp_vs_brute,
    },
    ClaimInfo {
        id: "mycielski-chi",
        statement: "M_k has 3·2^(k-2) - 1 vertices, is triangle-free and has χ = k",
        defaults: &[("k", 4)],
        run: mycielski::chi,
        recheck: mycielski::recheck_chi,
    },
];

pub fn find(id: &str) -> Result<&'static ClaimInfo, VerifyError> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| VerifyError::UnknownClaim(id.to_string()))
}

/// Defaults overlaid with `overrides`; the global seed replaces the default
/// seed but not an explicit one.
pub fn resolve(
    info: &ClaimInfo,
    overrides: &Params,
    opts: &RunOptions,
) -> Result<Params, VerifyError> {
    let mut params: Params = info
        .defaults
        .iter()
        .map(|&(k, v)| (k.to_string(), v))
        .collect();
    if let (Some(seed), Some(slot)) = (opts.seed, params.get_mut("seed")) {
        *slot = seed;
    }
    for (name, &value) in overrides {
        match params.get_mut(name) {
            Some(slot) => *slot = value,
            None => {
                return Err(VerifyError::UnknownParameter {
                    claim: info.id.to_string(),
                    name: name.clone(),
                    accepted: info
                        .defaults
                        .iter()
                        .map(|d| d.0)
                        .collect::<Vec<_>>()
                        .join(", "),
                })
            }
        }
    }
    Ok(params)
}

/// Runs one claim. Instances over a size guard come back as skipped;
/// parameters outside a statement's hypotheses are errors.
pub fn run_claim(
    id: &str,
    overrides: &Params,
    opts: &RunOptions,
) -> Result<ClaimReport, VerifyError> {
    let info = find(id)?;
    let params = resolve(info, overrides, opts)?;
    let start = Instant::now();
    let outcome = match (info.run)(&Ctx {
        params: &params,
        opts,
    }) {
        Ok(outcome) => outcome,
        Err(e @ CoreError::TooLarge { .. }) => Outcome::skipped(e.to_string()),
        Err(source) => {
            return Err(VerifyError::Invalid {
                claim: id.to_string(),
                source,
            })
        }
    };
    Ok(ClaimReport {
        schema: SCHEMA_VERSION,
        claim_id: id.to_string(),
        parameters: params,
        verdict: outcome.verdict,
        summary: outcome.summary,
        certificate: outcome.certificate,
        elapsed_ms: opts.timings.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Validates the certificate of a passing report. Other verdicts carry
/// nothing to check.
pub fn recheck(report: &ClaimReport) -> Result<(), VerifyError> {
    let info = find(&report.claim_id)?;
    if report.verdict != Verdict::Pass {
        return Ok(());
    }
    let cert = report
        .certificate
        .as_ref()
        .ok_or_else(|| VerifyError::Certificate("pass without certificate".into()))?;
    (info.recheck)(&report.parameters, cert).map_err(VerifyError::Certificate)
}

/// The instances run by `verify all`, in report order.
pub fn default_plan() -> Vec<(&'static str, Params)> {
    let p = |pairs: &[(&str, u64)]| -> Params {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    };
    vec![
        ("lemma1-conversion", p(&[])),
        ("lemma-cycle-no-special", p(&[("n", 5)])),
        ("lemma-cycle-no-special", p(&[("n", 7)])),
        ("lemma-star-decomp", p(&[("n", 5), ("m", 9)])),
        ("corollary-connectivity", p(&[("n", 5), ("m", 9), ("k", 5)])),
        ("lemma-mycielski-embed", p(&[("n", 2), ("m", 2), ("r", 4)])),
        ("lemma-mycielski-embed", p(&[("n", 2), ("m", 3), ("r", 5)])),
        ("lemma-mycielski-embed", p(&[("n", 3), ("m", 2), ("r", 5)])),
        ("lemma-mycielski-embed", p(&[("n", 3), ("m", 3), ("r", 6)])),
        ("thm1-k2", p(&[("m", 6)])),
        ("thm1-upper-mu", p(&[("n", 5), ("m", 9)])),
        ("thm1-cycle-reduced", p(&[("m", 1)])),
        ("thm1-cycle-reduced", p(&[("m", 2)])),
        ("thm1-cycle-reduced", p(&[("m", 3)])),
        ("thm1-cycle-lower", p(&[("n", 5), ("m", 9)])),
        ("thm2-smallscale", p(&[("m", 6)])),
        ("thm2-smallscale", p(&[("m", 6), ("l", 23)])),
        ("dp-vs-bruteforce", p(&[])),
        ("mycielski-chi", p(&[("k", 2)])),
        ("mycielski-chi", p(&[("k", 3)])),
        ("mycielski-chi", p(&[("k", 4)])),
        ("mycielski-chi", p(&[("k", 5)])),
    ]
}

/// Runs `plan` on up to `jobs` worker threads; reports keep plan order.
pub fn run_plan(
    plan: &[(&str, Params)],
    opts: &RunOptions,
    jobs: usize,
) -> Result<Vec<ClaimReport>, VerifyError> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<ClaimReport, VerifyError>>>> =
        plan.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, plan.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((id, overrides)) = plan.get(i) else {
                    break;
                };
                *slots[i].lock().unwrap() = Some(run_claim(id, overrides, opts));
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("every slot filled"))
        .collect()
}
