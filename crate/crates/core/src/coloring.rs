//! Exact colouring of whole graphs and of vertex subsets (decomposition bags).
//!
//! Decisions for `k <= 2` are answered directly (independence or
//! bipartiteness). Larger `k` goes through a DSATUR backtracking search
//! that pins a greedily found clique to the first colours and only ever opens
//! the next unused colour, which removes palette symmetry.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize};

use crate::decomposition::Enumeration;
use crate::error::Result;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Proper colouring with colours `0..palette`. `colors[v]` is the colour of
/// vertex `v` (for subset colourings, indexed by ambient vertex; vertices
/// outside the subset carry `usize::MAX`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub palette: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    /// Checks properness on the vertices of `set`.
    pub fn is_proper_on(&self, g: &Graph, set: VertexSet) -> bool {
        if self.colors.len() != g.order() || !set.is_subset(g.vertices()) {
            return false;
        }
        set.iter().all(|v| {
            self.colors[v] < self.palette
                && (g.neighbors(v) & set)
                    .iter()
                    .all(|w| self.colors[w] != self.colors[v])
        })
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.is_proper_on(g, g.vertices())
    }

    /// Colour of each vertex of `set`, in increasing vertex order.
    pub fn colors_of(&self, set: VertexSet) -> Vec<usize> {
        set.iter().map(|v| self.colors[v]).collect()
    }

    /// Distinct colours used on `set`.
    pub fn colors_on(&self, set: VertexSet) -> Vec<usize> {
        let mut used: Vec<usize> = set.iter().map(|v| self.colors[v]).collect();
        used.sort_unstable();
        used.dedup();
        used
    }
}

pub fn chromatic_decision(g: &Graph, k: usize) -> Option<Coloring> {
    coloring_of_set(g, g.vertices(), k)
}

pub fn chromatic_number(g: &Graph) -> usize {
    chromatic_number_of_set(g, g.vertices())
}

/// An optimal colouring of `g`.
pub fn optimal_coloring(g: &Graph) -> Coloring {
    let chi = chromatic_number(g);
    chromatic_decision(g, chi).expect("chromatic number is attainable")
}

/// A `k`-colouring of `G[set]`, or `None` when `χ(G[set]) > k`.
pub fn coloring_of_set(g: &Graph, set: VertexSet, k: usize) -> Option<Coloring> {
    let local = Local::new(g, set);
    let colors = local.decide(k)?;
    let mut out = vec![usize::MAX; g.order()];
    for (i, &v) in local.original.iter().enumerate() {
        out[v] = colors[i] as usize;
    }
    Some(Coloring {
        palette: k,
        colors: out,
    })
}

pub fn colorable(g: &Graph, set: VertexSet, k: usize) -> bool {
    Local::new(g, set).decide(k).is_some()
}

pub fn chromatic_number_of_set(g: &Graph, set: VertexSet) -> usize {
    Local::new(g, set).chromatic_number(0)
}

/// Size of the greedy colouring along `order` (first-fit).
pub fn greedy_bound(g: &Graph, order: &Enumeration) -> Result<usize> {
    order.check_for(g)?;
    let mut colors = vec![usize::MAX; g.order()];
    let mut used = 0;
    for &v in order.as_slice() {
        let taken: Vec<usize> = g.neighbors(v).iter().map(|w| colors[w]).collect();
        let c = (0..).find(|c| !taken.contains(c)).unwrap();
        colors[v] = c;
        used = used.max(c + 1);
    }
    Ok(used)
}

/// Calls `visit` on every proper `k`-colouring of `G[set]` (colours indexed
/// like [`Coloring::colors`]), stopping early on `ControlFlow::Break`.
/// Returns the number of colourings visited.
pub fn for_each_coloring(
    g: &Graph,
    set: VertexSet,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> u64 {
    let order = set.to_vec();
    let mut colors = vec![usize::MAX; g.order()];
    let mut count = 0;
    fn go(
        g: &Graph,
        order: &[usize],
        pos: usize,
        k: usize,
        colors: &mut [usize],
        count: &mut u64,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(&v) = order.get(pos) else {
            *count += 1;
            return visit(colors);
        };
        for c in 0..k {
            if g.neighbors(v).iter().all(|w| colors[w] != c) {
                colors[v] = c;
                go(g, order, pos + 1, k, colors, count, visit)?;
                colors[v] = usize::MAX;
            }
        }
        ControlFlow::Continue(())
    }
    let _ = go(g, &order, 0, k, &mut colors, &mut count, &mut visit);
    count
}

/// Compact copy of `G[set]` with local indices.
struct Local {
    adj: Vec<u128>,
    original: Vec<usize>,
}

const NONE: u8 = u8::MAX;

impl Local {
    fn new(g: &Graph, set: VertexSet) -> Local {
        let original = set.to_vec();
        let mut local_of = [0u8; 128];
        for (i, &v) in original.iter().enumerate() {
            local_of[v] = i as u8;
        }
        let adj = original
            .iter()
            .map(|&v| {
                (g.neighbors(v) & set)
                    .iter()
                    .fold(0u128, |a, w| a | 1u128 << local_of[w])
            })
            .collect();
        Local { adj, original }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn has_edges(&self) -> bool {
        self.adj.iter().any(|&a| a != 0)
    }

    fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut color = vec![NONE; n];
        let mut stack = Vec::new();
        for root in 0..n {
            if color[root] != NONE {
                continue;
            }
            color[root] = 0;
            stack.push(root);
            while let Some(v) = stack.pop() {
                let mut nb = self.adj[v];
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    if color[w] == NONE {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    fn greedy_clique(&self) -> Vec<usize> {
        let n = self.n();
        let mut best = Vec::new();
        // seed from each vertex, extend by highest-degree candidate
        for seed in 0..n {
            let mut clique = vec![seed];
            let mut cand = self.adj[seed];
            while cand != 0 {
                let mut pick = usize::MAX;
                let mut pick_deg = 0;
                let mut c = cand;
                while c != 0 {
                    let w = c.trailing_zeros() as usize;
                    c &= c - 1;
                    let d = (self.adj[w] & cand).count_ones() + 1;
                    if pick == usize::MAX || d > pick_deg {
                        pick = w;
                        pick_deg = d;
                    }
                }
                clique.push(pick);
                cand &= self.adj[pick];
            }
            if clique.len() > best.len() {
                best = clique;
            }
        }
        best
    }

    /// DSATUR greedy colouring; returns colours and the number used.
    fn dsatur_greedy(&self) -> (Vec<u8>, usize) {
        let n = self.n();
        let mut colors = vec![NONE; n];
        let mut classes: Vec<u128> = Vec::new();
        let mut uncolored = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        while uncolored != 0 {
            let v = pick_vertex(&self.adj, &classes, uncolored);
            let c = (0..classes.len())
                .find(|&c| self.adj[v] & classes[c] == 0)
                .unwrap_or_else(|| {
                    classes.push(0);
                    classes.len() - 1
                });
            classes[c] |= 1u128 << v;
            colors[v] = c as u8;
            uncolored &= !(1u128 << v);
        }
        (colors, classes.len())
    }

    fn decide(&self, k: usize) -> Option<Vec<u8>> {
        let n = self.n();
        if n == 0 {
            return Some(Vec::new());
        }
        match k {
            0 => return None,
            1 => return (!self.has_edges()).then(|| vec![0; n]),
            2 => return self.two_coloring(),
            _ => {}
        }
        if k >= n {
            return Some((0..n as u8).collect());
        }
        let (greedy, used) = self.dsatur_greedy();
        if used <= k {
            return Some(greedy);
        }
        let clique = self.greedy_clique();
        if clique.len() > k {
            return None;
        }
        self.backtrack(k, &clique)
    }

    fn backtrack(&self, k: usize, clique: &[usize]) -> Option<Vec<u8>> {
        let n = self.n();
        let mut search = Search {
            adj: &self.adj,
            k,
            colors: vec![NONE; n],
            classes: vec![0; k],
            uncolored: if n == 128 {
                u128::MAX
            } else {
                (1u128 << n) - 1
            },
        };
        for (c, &v) in clique.iter().enumerate() {
            search.assign(v, c);
        }
        search.run(clique.len()).then_some(search.colors)
    }

    /// Exact chromatic number, searching upward from `lower`.
    fn chromatic_number(&self, lower: usize) -> usize {
        let n = self.n();
        if n == 0 {
            return 0;
        }
        if !self.has_edges() {
            return 1;
        }
        if self.two_coloring().is_some() {
            return 2;
        }
        let (_, upper) = self.dsatur_greedy();
        let lower = lower.max(self.greedy_clique().len()).max(3);
        (lower..upper)
            .find(|&k| self.decide(k).is_some())
            .unwrap_or(upper)
    }
}

fn forbidden(adj: &[u128], classes: &[u128], v: usize) -> u32 {
    classes
        .iter()
        .enumerate()
        .filter(|(_, &cls)| adj[v] & cls != 0)
        .fold(0u32, |m, (c, _)| m | 1 << c)
}

/// Most saturated uncoloured vertex, ties broken by uncoloured degree.
fn pick_vertex(adj: &[u128], classes: &[u128], uncolored: u128) -> usize {
    let mut best = (0u32, 0u32, usize::MAX);
    let mut u = uncolored;
    while u != 0 {
        let v = u.trailing_zeros() as usize;
        u &= u - 1;
        let sat = forbidden(adj, classes, v).count_ones();
        let deg = (adj[v] & uncolored).count_ones();
        if best.2 == usize::MAX || (sat, deg) > (best.0, best.1) {
            best = (sat, deg, v);
        }
    }
    best.2
}

struct Search<'a> {
    adj: &'a [u128],
    k: usize,
    colors: Vec<u8>,
    classes: Vec<u128>,
    uncolored: u128,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c as u8;
        self.classes[c] |= 1u128 << v;
        self.uncolored &= !(1u128 << v);
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = NONE;
        self.classes[c] &= !(1u128 << v);
        self.uncolored |= 1u128 << v;
    }

    fn run(&mut self, used: usize) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        let v = pick_vertex(self.adj, &self.classes, self.uncolored);
        let blocked = forbidden(self.adj, &self.classes, v);
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if blocked >> c & 1 == 1 {
                continue;
            }
            self.assign(v, c);
            if self.run(used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// Known bounds `lo <= χ(bag) <= hi` for one bag.
#[derive(Clone, Copy, Debug)]
struct Bounds {
    lo: u8,
    hi: u8,
}

/// Memoised bag chromatic queries for one fixed graph, keyed by bag bitmask.
///
/// Each entry keeps a lower and an upper bound, so a `χ <= k` query resolves
/// to yes (`hi <= k`), no (`lo > k`) or unknown, and only the unknown case
/// triggers a colouring search. Safe to share between workers: concurrent
/// misses on the same bag may both search, and both publish the same answer.
pub struct BagChromatic<'g> {
    graph: &'g Graph,
    cache: DashMap<VertexSet, Bounds, FxBuildHasher>,
    hits: AtomicU64,
    searches: AtomicU64,
}

impl<'g> BagChromatic<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        BagChromatic {
            graph,
            cache: DashMap::with_hasher(FxBuildHasher),
            hits: AtomicU64::new(0),
            searches: AtomicU64::new(0),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn searches(&self) -> u64 {
        self.searches.load(Ordering::Relaxed)
    }

    /// Is `χ(G[bag]) <= k`?
    pub fn at_most(&self, bag: VertexSet, k: usize) -> bool {
        let size = bag.len();
        if size <= k {
            return true;
        }
        match k {
            0 => return false,
            1 => return self.graph.is_independent(bag),
            2 => return self.graph.is_bipartite_on(bag),
            _ => {}
        }
        let bag = self.graph.k_core(bag, k);
        let size = bag.len();
        if size <= k {
            return true;
        }
        if let Some(b) = self.cache.get(&bag) {
            if b.hi as usize <= k {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return true;
            }
            if b.lo as usize > k {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return false;
            }
        }
        self.searches.fetch_add(1, Ordering::Relaxed);
        let local = Local::new(self.graph, bag);
        let ok = local.decide(k).is_some();
        let mut entry = self.cache.entry(bag).or_insert(Bounds {
            lo: 0,
            hi: size as u8,
        });
        if ok {
            entry.hi = entry.hi.min(k as u8);
        } else {
            entry.lo = entry.lo.max(k as u8 + 1);
        }
        ok
    }

    pub fn chromatic_number(&self, bag: VertexSet) -> usize {
        if let Some(b) = self.cache.get(&bag) {
            if b.lo == b.hi {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return b.lo as usize;
            }
        }
        self.searches.fetch_add(1, Ordering::Relaxed);
        let lower = self.cache.get(&bag).map_or(0, |b| b.lo as usize);
        let chi = Local::new(self.graph, bag).chromatic_number(lower);
        self.cache.insert(
            bag,
            Bounds {
                lo: chi as u8,
                hi: chi as u8,
            },
        );
        chi
    }
}
