//! Graph operations with explicit certificates: the row product `R_m(G)`,
//! Mycielski graphs, and the decompositions, enumerations and embeddings
//! built on top of them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring;
use crate::decomposition::{Enumeration, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{make_cycle, Graph};
use crate::vertex_set::VertexSet;

/// Base part of a vertex `(i, v)` of `R_m(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Apex,
    Vertex(usize),
}

/// Vertex `(row, base)` of `R_m(G)`; rows are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RmLabel {
    pub row: usize,
    pub base: Base,
}

impl fmt::Display for RmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::Apex => write!(f, "({},v0)", self.row + 1),
            Base::Vertex(v) => write!(f, "({},v{})", self.row + 1, v + 1),
        }
    }
}

/// Where a vertex of `M_k` came from in the recursive construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MycielskiLabel {
    /// One of the two endpoints of `M_2`.
    Seed(usize),
    /// The vertex `w` added at `level`, complete to that level's shadows.
    Apex { level: usize },
    /// The shadow added at `level` corresponding to vertex `of` of `M_{level-1}`.
    Shadow { level: usize, of: usize },
}

impl fmt::Display for MycielskiLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MycielskiLabel::Seed(i) => write!(f, "s{i}"),
            MycielskiLabel::Apex { level } => write!(f, "w{level}"),
            MycielskiLabel::Shadow { level, of } => write!(f, "u{level}:{of}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LabeledGraph<L> {
    pub graph: Graph,
    pub labels: Vec<L>,
}

impl<L: fmt::Display> LabeledGraph<L> {
    fn new(graph: Graph, labels: Vec<L>) -> Result<Self> {
        let text = labels.iter().map(ToString::to_string).collect();
        Ok(LabeledGraph {
            graph: graph.with_labels(text)?,
            labels,
        })
    }
}

/// `R_m(G)` plus the shape needed to address its vertices.
#[derive(Clone, Debug)]
pub struct RProduct {
    pub labeled: LabeledGraph<RmLabel>,
    pub rows: usize,
    pub base_order: usize,
}

impl RProduct {
    pub fn graph(&self) -> &Graph {
        &self.labeled.graph
    }

    /// Index of `(row, base)`: rows are contiguous blocks of `n + 1`, apex
    /// first.
    pub fn index(&self, row: usize, base: Base) -> usize {
        rm_index(self.base_order, row, base)
    }

    pub fn label(&self, vertex: usize) -> RmLabel {
        self.labeled.labels[vertex]
    }

    /// The block `[I, U]`; `U` may include the apex.
    pub fn block(&self, rows: &[usize], bases: &[Base]) -> Result<VertexSet> {
        let mut out = VertexSet::EMPTY;
        for &i in rows {
            if i >= self.rows {
                return Err(Error::param(format!("row {i} outside 0..{}", self.rows)));
            }
            for &b in bases {
                if let Base::Vertex(v) = b {
                    if v >= self.base_order {
                        return Err(Error::InvalidVertex {
                            vertex: v,
                            order: self.base_order,
                        });
                    }
                }
                out.insert(self.index(i, b));
            }
        }
        Ok(out)
    }

    /// Block over the base vertices in `set` (no apex).
    pub fn block_of_set(&self, rows: &[usize], set: VertexSet) -> Result<VertexSet> {
        let bases: Vec<Base> = set.iter().map(Base::Vertex).collect();
        self.block(rows, &bases)
    }
}

fn rm_index(n: usize, row: usize, base: Base) -> usize {
    row * (n + 1)
        + match base {
            Base::Apex => 0,
            Base::Vertex(v) => v + 1,
        }
}

/// `(i,v) ~ (i',v')` iff same row and exactly one is the apex, or different
/// rows, neither is the apex, and `vv'` is an edge of `G`.
pub fn r_product(g: &Graph, m: usize) -> Result<RProduct> {
    if m == 0 {
        return Err(Error::param("R_m needs m >= 1"));
    }
    let n = g.order();
    let total = m * (n + 1);
    let mut edges = Vec::new();
    for i in 0..m {
        for v in 0..n {
            edges.push((rm_index(n, i, Base::Apex), rm_index(n, i, Base::Vertex(v))));
        }
        for j in i + 1..m {
            for (u, v) in g.edges() {
                edges.push((
                    rm_index(n, i, Base::Vertex(u)),
                    rm_index(n, j, Base::Vertex(v)),
                ));
                edges.push((
                    rm_index(n, i, Base::Vertex(v)),
                    rm_index(n, j, Base::Vertex(u)),
                ));
            }
        }
    }
    let graph = Graph::from_edges(total, edges)?;
    let labels = (0..m)
        .flat_map(|row| {
            std::iter::once(Base::Apex)
                .chain((0..n).map(Base::Vertex))
                .map(move |base| RmLabel { row, base })
        })
        .collect();
    Ok(RProduct {
        labeled: LabeledGraph::new(graph, labels)?,
        rows: m,
        base_order: n,
    })
}

/// Copy of `G[U]` inside the block `[I, U]` of `R_m(G)`.
///
/// `source[j]` is the `j`-th vertex of `U` in increasing order (the local
/// vertex `j` of `G[U]`); `image[j]` is its vertex in `R_m(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockEmbedding {
    pub source: Vec<usize>,
    pub image: Vec<usize>,
}

/// Colours `G[U]` optimally and sends colour class `s` to the `s`-th smallest
/// row of `rows`.
pub fn embed_into_block(g: &Graph, set: VertexSet, rows: &[usize]) -> Result<BlockEmbedding> {
    g.check_set(set)?;
    let mut rows = rows.to_vec();
    rows.sort_unstable();
    rows.dedup();
    let chi = coloring::chromatic_number_of_set(g, set);
    if rows.len() < chi {
        return Err(Error::Precondition(format!(
            "{} rows cannot hold a copy of a {chi}-chromatic set",
            rows.len()
        )));
    }
    let coloring = coloring::coloring_of_set(g, set, chi).expect("optimal colouring exists");
    let source = set.to_vec();
    let image = source
        .iter()
        .map(|&v| rm_index(g.order(), rows[coloring.colors[v]], Base::Vertex(v)))
        .collect();
    Ok(BlockEmbedding { source, image })
}

impl BlockEmbedding {
    /// Adds `v* ↦ (i*, v*)` for a row outside the embedding and a base vertex
    /// outside `U`. The source list stays sorted.
    pub fn extend(&self, g: &Graph, row: usize, v: usize) -> Result<BlockEmbedding> {
        g.check_vertex(v)?;
        if self.source.contains(&v) {
            return Err(Error::Precondition(format!("vertex {v} already embedded")));
        }
        let target = rm_index(g.order(), row, Base::Vertex(v));
        let mut pairs: Vec<(usize, usize)> = self
            .source
            .iter()
            .copied()
            .zip(self.image.iter().copied())
            .collect();
        pairs.push((v, target));
        pairs.sort_unstable();
        Ok(BlockEmbedding {
            source: pairs.iter().map(|p| p.0).collect(),
            image: pairs.iter().map(|p| p.1).collect(),
        })
    }
}

/// Order of `M_k`: `3 * 2^(k-2) - 1`.
pub fn mycielski_order(k: usize) -> usize {
    3 * (1usize << (k - 2)) - 1
}

/// `M_k` by the shadow-plus-apex recursion from `M_2 = K_2`.
///
/// Layout: `M_{k-1}` occupies the first `mycielski_order(k-1)` indices, then
/// the new apex `w`, then the shadows `u_1, u_2, ...` in the order of the
/// vertices they correspond to.
pub fn mycielski(k: usize) -> Result<LabeledGraph<MycielskiLabel>> {
    if k < 2 {
        return Err(Error::param(format!(
            "Mycielski graphs start at k = 2, got {k}"
        )));
    }
    if mycielski_order(k) > crate::vertex_set::MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "Mycielski graph order",
            actual: mycielski_order(k),
            limit: crate::vertex_set::MAX_VERTICES,
        });
    }
    let mut edges = vec![(0, 1)];
    let mut labels = vec![MycielskiLabel::Seed(0), MycielskiLabel::Seed(1)];
    for level in 3..=k {
        let prev = mycielski_order(level - 1);
        let apex = prev;
        let shadow = |i: usize| prev + 1 + i;
        labels.push(MycielskiLabel::Apex { level });
        labels.extend((0..prev).map(|of| MycielskiLabel::Shadow { level, of }));
        let old: Vec<(usize, usize)> = edges.clone();
        for i in 0..prev {
            edges.push((apex, shadow(i)));
        }
        for (a, b) in old {
            edges.push((shadow(a), b));
            edges.push((shadow(b), a));
        }
    }
    let graph = Graph::from_edges(mycielski_order(k), edges)?;
    LabeledGraph::new(graph, labels)
}

/// Star decomposition of `R_m(C_n)` of chromatic number 2.
///
/// Node 0 is the centre with bag `[[m], {v_2..v_n}]`; node `s+1` is the leaf
/// for row `s` with bag `[{s}, {v_0..v_n}] ∪ [[m], {v_2, v_n}]`. Here `v_j`
/// is cycle vertex `j - 1`.
pub fn star_decomposition_rm_cycle(n: usize, m: usize) -> Result<(RProduct, TreeDecomposition)> {
    if n < 4 {
        return Err(Error::Precondition(format!(
            "star decomposition needs n >= 4, got {n}"
        )));
    }
    let r = r_product(&make_cycle(n)?, m)?;
    let all_rows: Vec<usize> = (0..m).collect();
    let inner: Vec<Base> = (1..n).map(Base::Vertex).collect();
    let hinge = [Base::Vertex(1), Base::Vertex(n - 1)];
    let whole_row: Vec<Base> = std::iter::once(Base::Apex)
        .chain((0..n).map(Base::Vertex))
        .collect();

    let mut bags = vec![r.block(&all_rows, &inner)?];
    for s in 0..m {
        bags.push(r.block(&[s], &whole_row)? | r.block(&all_rows, &hinge)?);
    }
    let tree_edges = (1..=m).map(|leaf| (0, leaf)).collect();
    Ok((r, TreeDecomposition { tree_edges, bags }))
}

/// `(1,v_1), ..., (m,v_1), ..., (1,v_n), ..., (m,v_n), (1,v_0), ..., (m,v_0)`
/// where `v_1..v_n` is `order`.
pub fn mu_enumeration(g: &Graph, order: &Enumeration, m: usize) -> Result<Enumeration> {
    order.check_for(g)?;
    if m == 0 {
        return Err(Error::param("R_m needs m >= 1"));
    }
    let n = g.order();
    let mut out = Vec::with_capacity(m * (n + 1));
    for &v in order.as_slice() {
        out.extend((0..m).map(|i| rm_index(n, i, Base::Vertex(v))));
    }
    out.extend((0..m).map(|i| rm_index(n, i, Base::Apex)));
    Enumeration::new(out)
}

/// Map `V(R_m(M_n)) → V(M_r)` onto the levels `n+1 .. n+m` of `M_r`: row `i`
/// goes to level `n+1+i`, its apex to that level's `w` and base vertex `y`
/// to the shadow corresponding to `y`.
pub fn mycielski_embedding(n: usize, m: usize, r: usize) -> Result<Vec<usize>> {
    if n < 2 || m < 1 {
        return Err(Error::param(format!(
            "need n >= 2 and m >= 1, got n={n}, m={m}"
        )));
    }
    if r < m + n {
        return Err(Error::Precondition(format!(
            "M_{r} is too small for R_{m}(M_{n}); need r >= {}",
            m + n
        )));
    }
    let base = mycielski_order(n);
    let mut map = Vec::with_capacity(m * (base + 1));
    for i in 0..m {
        // level n+1+i starts right after M_{n+i}; apex first, then shadows
        let start = mycielski_order(n + i);
        map.push(start);
        map.extend((0..base).map(|y| start + 1 + y));
    }
    Ok(map)
}
