//! Claims about `R_m(K_2)`, the smallest instance the product theorems admit.

use pathchrom_core::dp::{path_chromatic_number_with, special_enumeration_with, HARD_VERTEX_LIMIT};
use pathchrom_core::{
    exists_special_enumeration, is_special_enumeration, make_complete, r_product, Enumeration,
    Error,
};
use serde_json::{json, Value};

use super::certificate::{check_colored_order, colored_order, core, ensure, field, ColoredOrder};
use super::{Ctx, Outcome};
use crate::report::Params;

/// `K_2` has `n = 2` and `χ_P = 2`, so the hypothesis is `m >= n + k + 2 = 6`.
const BASE_N: usize = 2;
const BASE_K: usize = 2;
const MIN_M: usize = BASE_N + BASE_K + 2;

fn check_m(m: usize) -> pathchrom_core::Result<()> {
    if m < MIN_M {
        return Err(Error::Precondition(format!("needs m >= {MIN_M}, got {m}")));
    }
    Ok(())
}

pub(super) fn k2(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let m = ctx.usize("m");
    check_m(m)?;
    let k2 = make_complete(2)?;
    let base_special = exists_special_enumeration(&k2)?.expect("K_2 has a special enumeration");
    let r = r_product(&k2, m)?;
    let report = path_chromatic_number_with(r.graph(), &ctx.dp())?;
    let value = report.value().expect("value query");
    let witness = colored_order(r.graph(), report.witness.as_ref().expect("witness"))?;
    let summary = format!(
        "χ_P(R_{m}(K_2)) = {value} ({} vertices, {} DP states); K_2 has special enumeration {:?}",
        r.graph().order(),
        report.states_explored,
        base_special.as_slice()
    );
    let cert = json!({
        "base_special_enumeration": base_special,
        "path_chromatic_number": value,
        "witness": witness,
    });
    Ok(Outcome::judge(value == BASE_K, summary, cert))
}

pub(super) fn recheck_k2(params: &Params, cert: &Value) -> Result<(), String> {
    let m = params["m"] as usize;
    let k2 = core(make_complete(2))?;
    let special: Enumeration = field(cert, "base_special_enumeration")?;
    ensure(
        core(is_special_enumeration(&k2, &special, BASE_K))?,
        "base enumeration is not special",
    )?;
    let r = core(r_product(&k2, m))?;
    let witness: ColoredOrder = field(cert, "witness")?;
    ensure(
        check_colored_order(r.graph(), &witness)? <= BASE_K,
        "witness needs more than 2 colours",
    )?;
    // any edge needs two colours, so 2 is also a lower bound
    ensure(r.graph().edge_count() > 0, "graph has an edge")
}

pub(super) fn second(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let (m, l) = (ctx.usize("m"), ctx.usize("l"));
    check_m(m)?;
    let inner_order = m * (BASE_N + 1);
    if l > 0 {
        let min_l = inner_order + BASE_K + 3;
        if l < min_l {
            return Err(Error::Precondition(format!(
                "needs l >= m(n+1) + k + 3 = {min_l}, got {l}"
            )));
        }
        let order = l * (inner_order + 1);
        return Ok(Outcome::skipped(format!(
            "R_{l}(R_{m}(K_2)) has {order} vertices; the subset DP ceiling is {HARD_VERTEX_LIMIT}"
        )));
    }
    let r = r_product(&make_complete(2)?, m)?;
    let value = path_chromatic_number_with(r.graph(), &ctx.dp())?;
    let k = value.value().expect("value query");
    let witness = colored_order(r.graph(), value.witness.as_ref().expect("witness"))?;
    let special = special_enumeration_with(r.graph(), &ctx.dp())?;
    let ok = k == BASE_K && !special.decision();
    let summary = format!(
        "χ_P(R_{m}(K_2)) = {k} and the special-enumeration DP finds {} over {} states",
        if special.decision() { "one" } else { "none" },
        special.states_explored
    );
    let cert = json!({
        "path_chromatic_number": k,
        "witness": witness,
        "special_enumeration_found": special.decision(),
        "special_states_explored": special.states_explored,
    });
    Ok(Outcome::judge(ok, summary, cert))
}

/// Rechecks the value; non-existence of a special enumeration is the DP's
/// exhaustive answer and has no short certificate.
pub(super) fn recheck_second(params: &Params, cert: &Value) -> Result<(), String> {
    let m = params["m"] as usize;
    let r = core(r_product(&core(make_complete(2))?, m))?;
    let witness: ColoredOrder = field(cert, "witness")?;
    ensure(
        check_colored_order(r.graph(), &witness)? <= BASE_K,
        "witness needs more than 2 colours",
    )?;
    let found: bool = field(cert, "special_enumeration_found")?;
    ensure(!found, "a special enumeration was reported")
}
