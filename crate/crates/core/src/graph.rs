//! Finite simple undirected graphs on vertices `0..n`.

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Immutable simple graph with bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

/// An induced subgraph together with the map from its vertices back to the
/// ambient graph: local vertex `i` is `original[i]`.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "graph order",
                actual: n,
                limit: MAX_VERTICES,
            });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { adj, labels: None })
    }

    pub fn empty(n: usize) -> Result<Graph> {
        Graph::from_edges(n, std::iter::empty())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.order() {
            return Err(Error::param(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.bound() {
            b if b <= self.order() => Ok(()),
            b => Err(Error::InvalidVertex {
                vertex: b - 1,
                order: self.order(),
            }),
        }
    }

    /// `N[U]`: `U` together with every vertex that has a neighbour in `U`.
    pub fn closed_neighborhood(&self, set: VertexSet) -> Result<VertexSet> {
        self.check_set(set)?;
        Ok(self.closed_neighborhood_unchecked(set))
    }

    #[inline]
    pub(crate) fn closed_neighborhood_unchecked(&self, set: VertexSet) -> VertexSet {
        set.iter().fold(set, |acc, v| acc | self.adj[v])
    }

    pub fn induced_subgraph(&self, set: VertexSet) -> Result<InducedSubgraph> {
        self.check_set(set)?;
        let original = set.to_vec();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let adj = original
            .iter()
            .map(|&v| (self.adj[v] & set).iter().map(|w| local[w]).collect())
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| original.iter().map(|&v| l[v].clone()).collect());
        Ok(InducedSubgraph {
            graph: Graph { adj, labels },
            original,
        })
    }

    /// True when no two members of `set` are adjacent.
    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| !self.adj[v].intersects(set))
    }

    /// Is `G[set]` bipartite? Layered BFS per component; even and odd layers
    /// must both be independent.
    pub fn is_bipartite_on(&self, set: VertexSet) -> bool {
        let mut remaining = set;
        while let Some(start) = remaining.first() {
            let mut layer = VertexSet::singleton(start);
            let mut seen = layer;
            let (mut even, mut odd) = (VertexSet::EMPTY, VertexSet::EMPTY);
            let mut parity = false;
            while !layer.is_empty() {
                if parity {
                    odd |= layer;
                } else {
                    even |= layer;
                }
                let next = layer.iter().fold(VertexSet::EMPTY, |a, v| a | self.adj[v]);
                layer = (next & set) - seen;
                seen |= layer;
                parity = !parity;
            }
            if !self.is_independent(even) || !self.is_independent(odd) {
                return false;
            }
            remaining = remaining - seen;
        }
        true
    }

    /// The `k`-core of `G[set]`: repeatedly drop vertices with fewer than `k`
    /// neighbours left. `G[set]` is `k`-colourable iff its `k`-core is.
    pub fn k_core(&self, set: VertexSet, k: usize) -> VertexSet {
        let mut core = set;
        loop {
            let low: VertexSet = core
                .iter()
                .filter(|&v| (self.adj[v] & core).len() < k)
                .collect();
            if low.is_empty() {
                return core;
            }
            core = core - low;
        }
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .all(|(u, v)| !self.adj[u].intersects(self.adj[v]))
    }

    /// Is `map` (indexed by vertices of `pattern`) an injective map onto an
    /// induced copy of `pattern` inside `self`?
    pub fn check_induced_embedding(&self, pattern: &Graph, map: &[usize]) -> Result<bool> {
        if map.len() != pattern.order() {
            return Err(Error::param(format!(
                "map covers {} of {} pattern vertices",
                map.len(),
                pattern.order()
            )));
        }
        for &t in map {
            self.check_vertex(t)?;
        }
        let image: VertexSet = map.iter().copied().collect();
        if image.len() != map.len() {
            return Ok(false);
        }
        for u in 0..pattern.order() {
            for v in u + 1..pattern.order() {
                if pattern.has_edge(u, v) != self.has_edge(map[u], map[v]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_of(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start) & within;
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(VertexSet::EMPTY, |a, v| a | self.adj[v]);
            frontier = (next & within) - seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.order() {
            0 => true,
            n => self.component_of(0, self.vertices()).len() == n,
        }
    }
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|j| (j, (j + 1) % n)))
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("complete graph needs at least 1 vertex"));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn make_path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|j| (j - 1, j)))
}
