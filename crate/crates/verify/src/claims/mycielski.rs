//! Claims about Mycielski graphs.

use pathchrom_core::constructions::mycielski_order;
use pathchrom_core::{
    chromatic_decision, chromatic_number, mycielski, mycielski_embedding, r_product, Coloring,
    Error,
};
use serde_json::{json, Value};

use super::certificate::{core, ensure, field};
use super::{Ctx, Outcome};
use crate::report::Params;

/// Exact colouring proves `χ(M_k) > k - 1` by search; beyond `M_5` that
/// search is not attempted.
const CHI_LIMIT: usize = 5;

pub(super) fn chi(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let k = ctx.usize("k");
    if k > CHI_LIMIT {
        return Err(Error::TooLarge {
            what: "Mycielski index for exact colouring",
            actual: k,
            limit: CHI_LIMIT,
        });
    }
    let g = mycielski(k)?.graph;
    let chi = chromatic_number(&g);
    let coloring = chromatic_decision(&g, chi).expect("χ colours suffice");
    let ok = g.order() == mycielski_order(k) && g.is_triangle_free() && chi == k;
    let summary = format!(
        "M_{k}: {} vertices (expected {}), triangle-free: {}, χ = {chi}",
        g.order(),
        mycielski_order(k),
        g.is_triangle_free()
    );
    let cert = json!({ "order": g.order(), "chromatic_number": chi, "coloring": coloring.colors });
    Ok(Outcome::judge(ok, summary, cert))
}

/// Checks order, triangle-freeness and the colouring; that `k - 1` colours
/// do not suffice is the exact search's answer.
pub(super) fn recheck_chi(params: &Params, cert: &Value) -> Result<(), String> {
    let k = params["k"] as usize;
    let g = core(mycielski(k))?.graph;
    ensure(g.order() == mycielski_order(k), "wrong order")?;
    ensure(g.is_triangle_free(), "not triangle-free")?;
    let colors: Vec<usize> = field(cert, "coloring")?;
    ensure(colors.len() == g.order(), "colouring length")?;
    let coloring = Coloring { palette: k, colors };
    ensure(
        coloring.is_proper(&g),
        "colouring is not proper with k colours",
    )
}

pub(super) fn embed(ctx: &Ctx) -> pathchrom_core::Result<Outcome> {
    let (n, m, r) = (ctx.usize("n"), ctx.usize("m"), ctx.usize("r"));
    let map = mycielski_embedding(n, m, r)?;
    let host = mycielski(r)?.graph;
    let pattern = r_product(&mycielski(n)?.graph, m)?;
    let ok = host.check_induced_embedding(pattern.graph(), &map)?;
    let summary = format!(
        "R_{m}(M_{n}) ({} vertices) {} an induced subgraph of M_{r} ({} vertices) under the level map",
        pattern.graph().order(),
        if ok { "is" } else { "is not" },
        host.order()
    );
    Ok(Outcome::judge(ok, summary, json!({ "map": map })))
}

pub(super) fn recheck_embed(params: &Params, cert: &Value) -> Result<(), String> {
    let (n, m, r) = (
        params["n"] as usize,
        params["m"] as usize,
        params["r"] as usize,
    );
    let map: Vec<usize> = field(cert, "map")?;
    let host = core(mycielski(r))?.graph;
    let pattern = core(r_product(&core(mycielski(n))?.graph, m))?;
    ensure(
        core(host.check_induced_embedding(pattern.graph(), &map))?,
        "map is not an induced embedding",
    )
}
