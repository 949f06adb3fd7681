//! Factorial-time reference answers. These deliberately share nothing with the
//! subset DP: they walk every permutation, build the induced path
//! decomposition and colour its bags.

use std::collections::HashMap;

use crate::coloring;
use crate::decomposition::{
    is_special_enumeration, next_permutation, path_decomposition_from_enumeration, Decomposition,
    Enumeration,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parallel::{self, Execution};
use crate::vertex_set::VertexSet;

pub const BRUTE_FORCE_LIMIT: usize = 9;

fn guard(g: &Graph) -> Result<()> {
    if g.order() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "graph order for exhaustive enumeration",
            actual: g.order(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// Calls `f` on every permutation of `0..n` starting with `first`.
fn permutations_from(n: usize, first: usize, mut f: impl FnMut(&[usize])) {
    let mut rest: Vec<usize> = (0..n).filter(|&v| v != first).collect();
    let mut perm = Vec::with_capacity(n);
    loop {
        perm.clear();
        perm.push(first);
        perm.extend_from_slice(&rest);
        f(&perm);
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

/// `min over σ of χ(P_σ)` by exhaustive enumeration.
pub fn brute_force_path_chromatic(g: &Graph) -> Result<usize> {
    guard(g)?;
    let n = g.order();
    if n == 0 {
        return Ok(0);
    }
    let best_per_first = parallel::map_indices(n, Execution::default(), |first| {
        let mut memo: HashMap<VertexSet, usize> = HashMap::new();
        let mut best = usize::MAX;
        permutations_from(n, first, |perm| {
            let order = Enumeration::new(perm.to_vec()).expect("permutation");
            let p = path_decomposition_from_enumeration(g, &order).expect("sized to graph");
            let mut worst = 0;
            for &bag in p.bags() {
                let chi = *memo
                    .entry(bag)
                    .or_insert_with(|| coloring::chromatic_number_of_set(g, bag));
                worst = worst.max(chi);
                if worst >= best {
                    break;
                }
            }
            best = best.min(worst);
        });
        best
    });
    Ok(best_per_first.into_iter().min().unwrap())
}

/// `(special, total)` over all `n!` enumerations, for a caller-supplied
/// `k = χ_P(G)`.
pub fn count_special_enumerations(g: &Graph, k: usize) -> Result<(u64, u64)> {
    guard(g)?;
    let n = g.order();
    if n == 0 {
        return Ok((1, 1));
    }
    let counts = parallel::map_indices(n, Execution::default(), |first| {
        let (mut special, mut total) = (0u64, 0u64);
        permutations_from(n, first, |perm| {
            let order = Enumeration::new(perm.to_vec()).expect("permutation");
            if is_special_enumeration(g, &order, k).expect("sized to graph") {
                special += 1;
            }
            total += 1;
        });
        (special, total)
    });
    Ok(counts
        .into_iter()
        .fold((0, 0), |(s, t), (a, b)| (s + a, t + b)))
}
