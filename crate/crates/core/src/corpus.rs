//! Seeded test-corpus generation: random graphs, exhaustive small graphs up to
//! isomorphism, and random valid path decompositions.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{next_permutation, PathDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest order for the exhaustive isomorphism routines.
pub const ISOMORPHISM_LIMIT: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("edges in range")
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn graph_from_code(n: usize, code: u64, pairs: &[(usize, usize)]) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| code >> i & 1 == 1)
        .map(|(_, &e)| e);
    Graph::from_edges(n, edges).expect("edges in range")
}

/// Every labelled graph on `n` vertices (`2^(n choose 2)` of them).
pub fn all_labeled_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::TooLarge {
            what: "order for labelled graph enumeration",
            actual: n,
            limit: 6,
        });
    }
    let pairs = pairs(n);
    Ok((0..1u64 << pairs.len())
        .map(|c| graph_from_code(n, c, &pairs))
        .collect())
}

/// Smallest adjacency code over all relabellings.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let n = g.order();
    if n > ISOMORPHISM_LIMIT {
        return Err(Error::TooLarge {
            what: "order for canonical form",
            actual: n,
            limit: ISOMORPHISM_LIMIT,
        });
    }
    let pairs = pairs(n);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let code = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| g.has_edge(perm[u], perm[v]))
            .fold(0u64, |c, (i, _)| c | 1 << i);
        best = best.min(code);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_code(a)? == canonical_code(b)?)
}

/// One representative per isomorphism class on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize, connected_only: bool) -> Result<Vec<Graph>> {
    let pairs = pairs(n);
    let mut seen = BTreeSet::new();
    for g in all_labeled_graphs(n)? {
        if connected_only && !g.is_connected() {
            continue;
        }
        seen.insert(canonical_code(&g)?);
    }
    Ok(seen
        .into_iter()
        .map(|c| graph_from_code(n, c, &pairs))
        .collect())
}

/// A random valid path decomposition of `g` with up to `slots` positions.
///
/// Each vertex gets a random interval of positions; edges whose intervals are
/// disjoint stretch the earlier interval up to the later one. Bags are the
/// vertices alive at each position; empty positions are dropped.
pub fn random_path_decomposition(rng: &mut impl Rng, g: &Graph, slots: usize) -> PathDecomposition {
    let slots = slots.max(1);
    let mut lo = vec![0; g.order()];
    let mut hi = vec![0; g.order()];
    for v in 0..g.order() {
        let a = rng.gen_range(0..slots);
        let b = rng.gen_range(0..slots);
        lo[v] = a.min(b);
        hi[v] = a.max(b);
    }
    // stretching only grows intervals, so repeat until stable
    loop {
        let mut changed = false;
        for (u, v) in g.edges() {
            if hi[u] < lo[v] {
                hi[u] = lo[v];
                changed = true;
            } else if hi[v] < lo[u] {
                hi[v] = lo[u];
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let bags = (0..slots)
        .map(|t| {
            (0..g.order())
                .filter(|&v| lo[v] <= t && t <= hi[v])
                .collect::<VertexSet>()
        })
        .collect();
    PathDecomposition::new(bags)
}
