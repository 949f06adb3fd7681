//! Claims checked against independent exhaustive computations.

use std::collections::BTreeMap;

use pathchrom_core::corpus::{
    self, graphs_up_to_isomorphism, random_graph, random_path_decomposition,
};
use pathchrom_core::decomposition::enumeration_chromatic_number;
use pathchrom_core::dp::{path_chromatic_number_with, BRUTE_FORCE_LIMIT};
use pathchrom_core::{
    brute_force_path_chromatic, decomposition_chromatic_number,
    enumeration_from_path_decomposition, Error, Graph,
};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::certificate::{core, ensure};
use super::{Ctx, Outcome};
use crate::report::Params;

const CONVERSION_MAX_N: usize = 12;

#[derive(Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct ConversionTally {
    samples: u64,
    /// χ(P_σ) strictly below χ(D).
    improved: u64,
    equal: u64,
    /// Samples with χ(P_σ) > χ(D); any entry refutes the claim.
    counterexamples: Vec<Counterexample>,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Counterexample {
    sample: u64,
    n: usize,
    edges: Vec<(usize, usize)>,
    decomposition: usize,
    converted: usize,
}

fn conversion_tally(
    seed: u64,
    samples: u64,
    max_n: usize,
) -> pathchrom_core::Result<ConversionTally> {
    if max_n == 0 || max_n > CONVERSION_MAX_N {
        return Err(Error::Precondition(format!(
            "max_n must be in 1..={CONVERSION_MAX_N}, got {max_n}"
        )));
    }
    let mut rng = corpus::rng(seed);
    let mut tally = ConversionTally::default();
    for sample in 0..samples {
        let n = rng.gen_range(1..=max_n);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let slots = rng.gen_range(1..=2 * n);
        let d = random_path_decomposition(&mut rng, &g, slots);
        let sigma = enumeration_from_path_decomposition(&g, &d)?;
        let converted = enumeration_chromatic_number(&g, &sigma)?;
        let original = decomposition_chromatic_number(&g, &d)?;
        tally.samples += 1;
        match converted.cmp(&original) {
            std::cmp::Ordering::Less => tally.improved += 1,
            std::cmp::Ordering::Equal => tally.equal += 1,
            std::cmp::Ordering::Greater => tally.counterexamples.push(Counterexample {
                sample,
                n,
                edges: g.edges().collect(),
                decomposition: original,
                converted,
            }),
        }
    }
    Ok(tally)
}

pub(super) fn conversion(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let tally = conversion_tally(ctx.get("seed"), ctx.get("samples"), ctx.usize("max_n"))?;
    let summary = format!(
        "{} random path decompositions: χ(P_σ) < χ(D) in {}, equal in {}, larger in {}",
        tally.samples,
        tally.improved,
        tally.equal,
        tally.counterexamples.len()
    );
    let ok = tally.counterexamples.is_empty();
    Ok(Outcome::judge(
        ok,
        summary,
        serde_json::to_value(&tally).expect("tally serializes"),
    ))
}

/// Regenerates the seeded sample and compares tallies.
pub(super) fn recheck_conversion(params: &Params, cert: &Value) -> Result<(), String> {
    let claimed: ConversionTally =
        serde_json::from_value(cert.clone()).map_err(|e| e.to_string())?;
    let fresh = core(conversion_tally(
        params["seed"],
        params["samples"],
        params["max_n"] as usize,
    ))?;
    ensure(claimed == fresh, "tally does not reproduce")?;
    ensure(
        claimed.counterexamples.is_empty(),
        "counterexamples present",
    )
}

#[derive(Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct Comparison {
    exhaustive_graphs: u64,
    random_graphs: u64,
    /// Path-chromatic value -> number of graphs.
    value_histogram: BTreeMap<usize, u64>,
    mismatches: Vec<Mismatch>,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Mismatch {
    n: usize,
    edges: Vec<(usize, usize)>,
    dp: usize,
    brute_force: usize,
    witness_value: usize,
}

fn compare(g: &Graph, ctx: &Ctx, out: &mut Comparison) -> pathchrom_core::Result<()> {
    let report = path_chromatic_number_with(g, &ctx.dp())?;
    let dp = report.value().expect("value query");
    let witness_value = enumeration_chromatic_number(g, report.witness.as_ref().expect("witness"))?;
    let brute = brute_force_path_chromatic(g)?;
    *out.value_histogram.entry(dp).or_default() += 1;
    if dp != brute || witness_value != dp {
        out.mismatches.push(Mismatch {
            n: g.order(),
            edges: g.edges().collect(),
            dp,
            brute_force: brute,
            witness_value,
        });
    }
    Ok(())
}

fn exhaustive_corpus(max_n: usize) -> pathchrom_core::Result<Vec<Graph>> {
    let mut all = Vec::new();
    for n in 1..=max_n {
        all.extend(graphs_up_to_isomorphism(n, true)?);
    }
    Ok(all)
}

pub(super) fn dp_vs_brute(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let n = ctx.usize("n");
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "random graph order for exhaustive enumeration",
            actual: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut out = Comparison::default();
    for g in exhaustive_corpus(ctx.usize("exhaustive_max"))? {
        compare(&g, ctx, &mut out)?;
        out.exhaustive_graphs += 1;
    }
    let mut rng = corpus::rng(ctx.get("seed"));
    for _ in 0..ctx.get("samples") {
        let p = rng.gen_range(0.15..0.85);
        let g = random_graph(&mut rng, n, p);
        compare(&g, ctx, &mut out)?;
        out.random_graphs += 1;
    }
    let summary = format!(
        "DP and brute force agree on {} of {} graphs ({} connected up to isomorphism, {} random on {n} vertices)",
        out.exhaustive_graphs + out.random_graphs - out.mismatches.len() as u64,
        out.exhaustive_graphs + out.random_graphs,
        out.exhaustive_graphs,
        out.random_graphs
    );
    let ok = out.mismatches.is_empty();
    Ok(Outcome::judge(
        ok,
        summary,
        serde_json::to_value(&out).expect("comparison serializes"),
    ))
}

/// Checks the corpus sizes and consistency of the tally; agreement itself is
/// established by the two searches.
pub(super) fn recheck_dp_vs_brute(params: &Params, cert: &Value) -> Result<(), String> {
    let claimed: Comparison = serde_json::from_value(cert.clone()).map_err(|e| e.to_string())?;
    let expected = core(exhaustive_corpus(params["exhaustive_max"] as usize))?.len() as u64;
    ensure(
        claimed.exhaustive_graphs == expected,
        "exhaustive corpus size",
    )?;
    ensure(
        claimed.random_graphs == params["samples"],
        "random corpus size",
    )?;
    let total: u64 = claimed.value_histogram.values().sum();
    ensure(total == expected + params["samples"], "histogram total")?;
    ensure(claimed.mismatches.is_empty(), "mismatches present")
}
