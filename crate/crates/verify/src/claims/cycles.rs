//! Claims about odd cycles and `R_m(C_n)`.

use pathchrom_core::dp::{
    count_special_enumerations, path_chromatic_number_with, special_enumeration_with,
    BRUTE_FORCE_LIMIT,
};
use pathchrom_core::io::{DecompositionJson, LoadedDecomposition};
use pathchrom_core::{
    connectivity, connectivity_with_cut, make_cycle, mu_enumeration, r_product,
    star_decomposition_rm_cycle, validate_tree_decomposition, Decomposition, Enumeration, Error,
    Graph, VertexSet,
};
use serde_json::{json, Value};

use super::certificate::{
    check_bag_colorings, check_colored_order, colored_order, colorings_on, core, ensure, factorial,
    field, ColoredOrder,
};
use super::{Ctx, Outcome};
use crate::report::Params;

fn odd_cycle(n: usize) -> pathchrom_core::Result<Graph> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::Precondition(format!("needs an odd n >= 5, got {n}")));
    }
    make_cycle(n)
}

pub(super) fn no_special(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let n = ctx.usize("n");
    let c = odd_cycle(n)?;
    let report = path_chromatic_number_with(&c, &ctx.dp())?;
    let k = report.value().expect("value query");
    let witness = colored_order(&c, report.witness.as_ref().expect("witness"))?;
    let special = special_enumeration_with(&c, &ctx.dp())?;
    let exhaustive = (n <= BRUTE_FORCE_LIMIT)
        .then(|| count_special_enumerations(&c, k))
        .transpose()?;

    let found_by_search = exhaustive.map_or(0, |(special, _)| special);
    let ok = k == 2 && !special.decision() && found_by_search == 0;
    let summary = match exhaustive {
        Some((s, total)) => format!(
            "χ_P(C_{n}) = {k}; special-enumeration DP found none; {s} of {total} orderings are special"
        ),
        None => format!("χ_P(C_{n}) = {k}; special-enumeration DP found none; exhaustive check beyond {BRUTE_FORCE_LIMIT} vertices not run"),
    };
    let cert = json!({
        "path_chromatic_number": k,
        "witness": witness,
        "special_dp_states": special.states_explored,
        "orderings_checked": exhaustive.map(|e| e.1),
        "special_orderings": exhaustive.map(|e| e.0),
    });
    Ok(Outcome::judge(ok, summary, cert))
}

pub(super) fn recheck_no_special(params: &Params, cert: &Value) -> Result<(), String> {
    let n = params["n"] as usize;
    let c = core(odd_cycle(n))?;
    let k: usize = field(cert, "path_chromatic_number")?;
    let witness: ColoredOrder = field(cert, "witness")?;
    ensure(k == 2, "value must be 2")?;
    ensure(
        check_colored_order(&c, &witness)? <= 2,
        "witness bags need at most 2 colours",
    )?;
    // an edge forces two colours, so the witness is optimal
    let checked: Option<u64> = field(cert, "orderings_checked")?;
    let special: Option<u64> = field(cert, "special_orderings")?;
    if n <= BRUTE_FORCE_LIMIT {
        ensure(
            checked == Some(factorial(n)),
            "every ordering must be counted",
        )?;
        ensure(special == Some(0), "no ordering may be special")?;
    }
    Ok(())
}

pub(super) fn star(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let (n, m) = (ctx.usize("n"), ctx.usize("m"));
    let (r, d) = star_decomposition_rm_cycle(n, m)?;
    let violation = validate_tree_decomposition(r.graph(), &d)?;
    if let Some(v) = violation {
        let summary = format!("star decomposition of R_{m}(C_{n}) is invalid: {v}");
        return Ok(Outcome::judge(false, summary, json!({ "violation": v })));
    }
    let colorings = colorings_on(r.graph(), &d)?;
    let chi = colorings
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        })
        .max()
        .unwrap_or(0);
    let summary = format!(
        "star decomposition of R_{m}(C_{n}) ({} vertices, {} bags) is valid with chromatic number {chi}",
        r.graph().order(),
        d.bags().len()
    );
    let cert = json!({
        "chromatic_number": chi,
        "decomposition": DecompositionJson::from_tree(&d),
        "bag_colorings": colorings,
    });
    Ok(Outcome::judge(chi == 2, summary, cert))
}

pub(super) fn recheck_star(params: &Params, cert: &Value) -> Result<(), String> {
    let (n, m) = (params["n"] as usize, params["m"] as usize);
    let r = core(r_product(&core(make_cycle(n))?, m))?;
    let doc: DecompositionJson = field(cert, "decomposition")?;
    let LoadedDecomposition::Tree(d) = core(doc.load())? else {
        return Err("expected a tree decomposition".into());
    };
    ensure(
        core(validate_tree_decomposition(r.graph(), &d))?.is_none(),
        "decomposition is invalid",
    )?;
    let colorings: Vec<Vec<usize>> = field(cert, "bag_colorings")?;
    ensure(
        check_bag_colorings(r.graph(), d.bags(), &colorings)? <= 2,
        "a bag uses more than 2 colours",
    )?;
    ensure(
        r.graph().edge_count() > 0,
        "graph has an edge, so some bag needs 2 colours",
    )?;
    Ok(())
}

pub(super) fn connectivity(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let (n, m, k) = (ctx.usize("n"), ctx.usize("m"), ctx.usize("k"));
    if n < 3 || k > n || m < n + 4 {
        return Err(Error::Precondition(format!(
            "needs n >= 3, k <= n and m >= n + 4; got n={n}, m={m}, k={k}"
        )));
    }
    let r = r_product(&make_cycle(n)?, m)?;
    let conn = connectivity_with_cut(r.graph())?;
    let summary = format!(
        "R_{m}(C_{n}) ({} vertices) has vertex connectivity {} (needed >= {k})",
        r.graph().order(),
        conn.value
    );
    let cut = conn.cut.as_ref();
    let cert = json!({
        "connectivity": conn.value,
        "cut": cut.map(|c| c.vertices),
        "separates": cut.map(|c| c.separates),
    });
    Ok(Outcome::judge(conn.value >= k, summary, cert))
}

/// The minimum cut certifies the exact value from above; the lower bound
/// rests on the max-flow computation.
pub(super) fn recheck_connectivity(params: &Params, cert: &Value) -> Result<(), String> {
    let (n, m, k) = (
        params["n"] as usize,
        params["m"] as usize,
        params["k"] as usize,
    );
    let r = core(r_product(&core(make_cycle(n))?, m))?;
    let value: usize = field(cert, "connectivity")?;
    ensure(value >= k, "connectivity below k")?;
    let cut: Option<VertexSet> = field(cert, "cut")?;
    let pair: Option<(usize, usize)> = field(cert, "separates")?;
    match (cut, pair) {
        (Some(cut), Some((s, t))) => {
            ensure(cut.len() == value, "cut size differs from the value")?;
            ensure(
                connectivity::separates(r.graph(), cut, s, t),
                "cut does not separate the pair",
            )
        }
        _ => ensure(
            value + 1 == r.graph().order(),
            "only complete graphs lack a cut",
        ),
    }
}

fn mu_for_cycle(n: usize, m: usize) -> pathchrom_core::Result<(Graph, Enumeration)> {
    let c = make_cycle(n)?;
    let r = r_product(&c, m)?;
    let mu = mu_enumeration(&c, &Enumeration::identity(n), m)?;
    Ok((r.graph().clone(), mu))
}

pub(super) fn upper_mu(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let (n, m) = (ctx.usize("n"), ctx.usize("m"));
    let base = path_chromatic_number_with(&make_cycle(n)?, &ctx.dp())?;
    let k = base.value().expect("value query");
    let (g, mu) = mu_for_cycle(n, m)?;
    let colored = colored_order(&g, &mu)?;
    let chi = check_colored_order(&g, &colored).expect("optimal colourings are proper");
    let summary = format!(
        "χ(P_μ) = {chi} on R_{m}(C_{n}) ({} vertices, cyclic σ); bound χ_P(C_{n}) + 1 = {}",
        g.order(),
        k + 1
    );
    let cert = json!({ "k": k, "chromatic_number": chi, "mu": colored });
    Ok(Outcome::judge(chi <= k + 1, summary, cert))
}

pub(super) fn recheck_upper_mu(params: &Params, cert: &Value) -> Result<(), String> {
    let (n, m) = (params["n"] as usize, params["m"] as usize);
    let (g, mu) = core(mu_for_cycle(n, m))?;
    let colored: ColoredOrder = field(cert, "mu")?;
    ensure(colored.order == mu.as_slice(), "certificate order is not μ")?;
    let k: usize = field(cert, "k")?;
    ensure(
        check_colored_order(&g, &colored)? <= k + 1,
        "a bag of P_μ uses more than k + 1 colours",
    )
}

pub(super) fn reduced(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let (n, m) = (ctx.usize("n"), ctx.usize("m"));
    let r = r_product(&make_cycle(n)?, m)?;
    let report = path_chromatic_number_with(r.graph(), &ctx.dp())?;
    let value = report.value().expect("value query");
    let witness = colored_order(r.graph(), report.witness.as_ref().expect("witness"))?;
    let (g, mu) = mu_for_cycle(n, m)?;
    let mu_value =
        check_colored_order(&g, &colored_order(&g, &mu)?).expect("optimal colourings are proper");
    let ok = check_colored_order(r.graph(), &witness) == Ok(value) && value <= mu_value;
    let summary = format!(
        "χ_P(R_{m}(C_{n})) = {value} ({} vertices, {} DP states); χ(P_μ) = {mu_value}",
        r.graph().order(),
        report.states_explored
    );
    let cert = json!({ "path_chromatic_number": value, "mu_value": mu_value, "witness": witness });
    Ok(Outcome::judge(ok, summary, cert))
}

/// Upper bound only: minimality of the value is the DP's exhaustive answer.
pub(super) fn recheck_reduced(params: &Params, cert: &Value) -> Result<(), String> {
    let (n, m) = (params["n"] as usize, params["m"] as usize);
    let r = core(r_product(&core(make_cycle(n))?, m))?;
    let value: usize = field(cert, "path_chromatic_number")?;
    let witness: ColoredOrder = field(cert, "witness")?;
    ensure(
        check_colored_order(r.graph(), &witness)? <= value,
        "witness exceeds the value",
    )
}

/// Under the hypothesis the graph has at least 54 vertices, far past the
/// subset DP, so this claim only records why it is skipped.
pub(super) fn lower(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let (n, m) = (ctx.usize("n"), ctx.usize("m"));
    odd_cycle(n)?;
    if m < n + 4 {
        return Err(Error::Precondition(format!(
            "needs m >= n + 4, got m={m}, n={n}"
        )));
    }
    let order = m * (n + 1);
    Ok(Outcome::skipped(format!(
        "R_{m}(C_{n}) has {order} vertices; the subset DP would need 2^{order} states, \
         past its ceiling of {} vertices",
        pathchrom_core::dp::HARD_VERTEX_LIMIT
    )))
}

pub(super) fn recheck_lower(_: &Params, _: &Value) -> Result<(), String> {
    Err("this claim never produces a certificate".into())
}
