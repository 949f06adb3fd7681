//! Vertex enumerations, path- and tree-decompositions, their validation and
//! chromatic number, and the two conversions between enumerations and path
//! decompositions.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::{self, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parallel::{self, Execution};
use crate::vertex_set::VertexSet;

/// A permutation `v_1, ..., v_n` of the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Enumeration(Vec<usize>);

impl Enumeration {
    pub fn new(order: Vec<usize>) -> Result<Enumeration> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::param(format!(
                    "not a permutation of 0..{n}: {order:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Enumeration(order))
    }

    pub fn identity(n: usize) -> Enumeration {
        Enumeration((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `position[v]` is the index of `v` in the enumeration.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn check_for(&self, g: &Graph) -> Result<()> {
        if self.0.len() == g.order() {
            Ok(())
        } else {
            Err(Error::param(format!(
                "enumeration of {} vertices for a graph of order {}",
                self.0.len(),
                g.order()
            )))
        }
    }
}

impl TryFrom<Vec<usize>> for Enumeration {
    type Error = Error;
    fn try_from(order: Vec<usize>) -> Result<Self> {
        Enumeration::new(order)
    }
}

impl From<Enumeration> for Vec<usize> {
    fn from(e: Enumeration) -> Vec<usize> {
        e.0
    }
}

/// Advances `perm` to the next permutation in lexicographic order. Returns
/// false (leaving `perm` sorted ascending) after the last one.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// First violated decomposition axiom, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Violation {
    VertexCover { vertex: usize },
    EdgeCover { u: usize, v: usize },
    ConnectedSubtree { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexCover { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::EdgeCover { u, v } => write!(f, "edge {u}-{v} is in no bag"),
            Violation::ConnectedSubtree { vertex } => {
                write!(f, "bags containing vertex {vertex} are not connected")
            }
        }
    }
}

/// Common view of path and tree decompositions.
pub trait Decomposition {
    fn bags(&self) -> &[VertexSet];

    /// `Ok(None)` when valid for `g`, `Ok(Some(_))` naming the first
    /// violated axiom, `Err` when the decomposition is malformed on its own.
    fn validate(&self, g: &Graph) -> Result<Option<Violation>>;
}

/// Ordered bag sequence `B_1, ..., B_s`. Empty bags are dropped on
/// construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    bags: Vec<VertexSet>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<VertexSet>) -> PathDecomposition {
        PathDecomposition {
            bags: bags.into_iter().filter(|b| !b.is_empty()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn to_tree(&self) -> TreeDecomposition {
        TreeDecomposition {
            tree_edges: (1..self.bags.len()).map(|i| (i - 1, i)).collect(),
            bags: self.bags.clone(),
        }
    }
}

impl Decomposition for PathDecomposition {
    fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    fn validate(&self, g: &Graph) -> Result<Option<Violation>> {
        check_bags(g, &self.bags)?;
        if let Some(v) = cover_violation(g, &self.bags) {
            return Ok(Some(v));
        }
        for v in 0..g.order() {
            let hits: Vec<usize> = (0..self.bags.len())
                .filter(|&i| self.bags[i].contains(v))
                .collect();
            if hits.windows(2).any(|w| w[1] != w[0] + 1) {
                return Ok(Some(Violation::ConnectedSubtree { vertex: v }));
            }
        }
        Ok(None)
    }
}

/// A tree on nodes `0..bags.len()` with one bag per node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub tree_edges: Vec<(usize, usize)>,
    pub bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    fn tree_adjacency(&self) -> Result<Vec<Vec<usize>>> {
        let nodes = self.bags.len();
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in &self.tree_edges {
            if a >= nodes || b >= nodes {
                return Err(Error::structure(format!(
                    "tree edge {a}-{b} names a missing node"
                )));
            }
            if a == b || adj[a].contains(&b) {
                return Err(Error::structure(format!(
                    "tree edge {a}-{b} is a loop or repeated"
                )));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if nodes > 0 {
            if self.tree_edges.len() != nodes - 1 {
                return Err(Error::structure(format!(
                    "{} edges on {nodes} nodes is not a tree",
                    self.tree_edges.len()
                )));
            }
            let reached = reachable(&adj, 0, |_| true);
            if reached.iter().any(|r| !r) {
                return Err(Error::structure("tree is disconnected"));
            }
        } else if !self.tree_edges.is_empty() {
            return Err(Error::structure("edges without nodes"));
        }
        Ok(adj)
    }
}

impl Decomposition for TreeDecomposition {
    fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    fn validate(&self, g: &Graph) -> Result<Option<Violation>> {
        let adj = self.tree_adjacency()?;
        check_bags(g, &self.bags)?;
        if let Some(v) = cover_violation(g, &self.bags) {
            return Ok(Some(v));
        }
        for v in 0..g.order() {
            let holds = |t: usize| self.bags[t].contains(v);
            let start = (0..self.bags.len())
                .find(|&t| holds(t))
                .expect("vertex covered");
            let reached = reachable(&adj, start, holds);
            if (0..self.bags.len()).any(|t| holds(t) && !reached[t]) {
                return Ok(Some(Violation::ConnectedSubtree { vertex: v }));
            }
        }
        Ok(None)
    }
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for &u in &adj[t] {
            if !seen[u] && allowed(u) {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

fn check_bags(g: &Graph, bags: &[VertexSet]) -> Result<()> {
    bags.iter().try_for_each(|&b| g.check_set(b))
}

fn cover_violation(g: &Graph, bags: &[VertexSet]) -> Option<Violation> {
    let union = bags.iter().fold(VertexSet::EMPTY, |a, &b| a | b);
    if let Some(vertex) = (g.vertices() - union).first() {
        return Some(Violation::VertexCover { vertex });
    }
    g.edges()
        .find(|&(u, v)| !bags.iter().any(|b| b.contains(u) && b.contains(v)))
        .map(|(u, v)| Violation::EdgeCover { u, v })
}

pub fn validate_tree_decomposition(g: &Graph, d: &TreeDecomposition) -> Result<Option<Violation>> {
    d.validate(g)
}

pub fn validate_path_decomposition(g: &Graph, d: &PathDecomposition) -> Result<Option<Violation>> {
    d.validate(g)
}

fn require_valid(g: &Graph, d: &dyn Decomposition) -> Result<()> {
    match d.validate(g)? {
        None => Ok(()),
        Some(v) => Err(Error::structure(format!("not a decomposition: {v}"))),
    }
}

/// Maximum over bags of `χ(G[B])`; 0 for a decomposition with no bags.
pub fn decomposition_chromatic_number(g: &Graph, d: &dyn Decomposition) -> Result<usize> {
    require_valid(g, d)?;
    Ok(max_bag_chromatic(g, d.bags(), Execution::default()))
}

pub(crate) fn max_bag_chromatic(g: &Graph, bags: &[VertexSet], exec: Execution) -> usize {
    parallel::map_indices(bags.len(), exec, |i| {
        coloring::chromatic_number_of_set(g, bags[i])
    })
    .into_iter()
    .max()
    .unwrap_or(0)
}

/// An optimal colouring of every bag, in bag order.
pub fn bag_colorings(g: &Graph, d: &dyn Decomposition) -> Result<Vec<Coloring>> {
    require_valid(g, d)?;
    let bags = d.bags();
    Ok(parallel::map_indices(
        bags.len(),
        Execution::default(),
        |i| {
            let k = coloring::chromatic_number_of_set(g, bags[i]);
            coloring::coloring_of_set(g, bags[i], k).expect("optimal colouring exists")
        },
    ))
}

/// `X_l = N[{v_1..v_l}] \ {v_1..v_{l-1}}` for each `l`.
pub fn path_decomposition_from_enumeration(
    g: &Graph,
    order: &Enumeration,
) -> Result<PathDecomposition> {
    order.check_for(g)?;
    let mut placed = VertexSet::EMPTY;
    let mut reach = VertexSet::EMPTY;
    let mut bags = Vec::with_capacity(g.order());
    for &v in order.as_slice() {
        reach |= g.neighbors(v).with(v);
        bags.push(reach - placed);
        placed.insert(v);
    }
    Ok(PathDecomposition { bags })
}

/// Chromatic number of the path decomposition induced by `order`.
pub fn enumeration_chromatic_number(g: &Graph, order: &Enumeration) -> Result<usize> {
    let p = path_decomposition_from_enumeration(g, order)?;
    Ok(max_bag_chromatic(g, p.bags(), Execution::Sequential))
}

/// Orders vertices by the index of the last bag containing them, ties by
/// vertex index. The induced path decomposition has every bag `X_i` inside
/// the last bag holding `v_i`, so its chromatic number is at most that of `d`.
pub fn enumeration_from_path_decomposition(
    g: &Graph,
    d: &PathDecomposition,
) -> Result<Enumeration> {
    require_valid(g, d)?;
    let mut last = vec![0; g.order()];
    for (i, bag) in d.bags().iter().enumerate() {
        for v in bag.iter() {
            last[v] = i;
        }
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (last[v], v));
    Ok(Enumeration(order))
}

/// Special enumerations reach `k = χ_P(G)` and enter every bag of chromatic
/// number `k` with a vertex that has no earlier neighbour. The caller
/// supplies `k`.
pub fn is_special_enumeration(g: &Graph, order: &Enumeration, k: usize) -> Result<bool> {
    let p = path_decomposition_from_enumeration(g, order)?;
    let chis: Vec<usize> = p
        .bags()
        .iter()
        .map(|&b| coloring::chromatic_number_of_set(g, b))
        .collect();
    if chis.iter().copied().max().unwrap_or(0) != k {
        return Ok(false);
    }
    let mut earlier = VertexSet::EMPTY;
    for (i, &v) in order.as_slice().iter().enumerate() {
        if chis[i] == k && g.neighbors(v).intersects(earlier) {
            return Ok(false);
        }
        earlier.insert(v);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_path};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn e(order: &[usize]) -> Enumeration {
        Enumeration::new(order.to_vec()).unwrap()
    }

    #[test]
    fn enumerations_must_be_permutations() {
        assert!(Enumeration::new(vec![0, 2]).is_err());
        assert!(Enumeration::new(vec![1, 1]).is_err());
        assert!(Enumeration::new(vec![1, 0]).is_ok());
        let c5 = make_cycle(5).unwrap();
        assert!(path_decomposition_from_enumeration(&c5, &Enumeration::identity(4)).is_err());
        let bad: std::result::Result<Enumeration, _> = serde_json::from_str("[0,0]");
        assert!(bad.is_err());
    }

    #[test]
    fn permutations_in_lexicographic_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn single_bag_is_valid() {
        let k4 = make_complete(4).unwrap();
        let d = TreeDecomposition {
            tree_edges: vec![],
            bags: vec![k4.vertices()],
        };
        assert_eq!(validate_tree_decomposition(&k4, &d).unwrap(), None);
        assert_eq!(decomposition_chromatic_number(&k4, &d).unwrap(), 4);
    }

    #[test]
    fn uncovered_edge_is_reported() {
        let c4 = make_cycle(4).unwrap();
        let d = TreeDecomposition {
            tree_edges: vec![(0, 1)],
            bags: vec![set(&[0, 1]), set(&[2, 3])],
        };
        assert_eq!(
            validate_tree_decomposition(&c4, &d).unwrap(),
            Some(Violation::EdgeCover { u: 0, v: 3 })
        );
        assert!(matches!(
            decomposition_chromatic_number(&c4, &d),
            Err(Error::InvalidStructure(_))
        ));
    }

    #[test]
    fn other_violations() {
        let p3 = make_path(3).unwrap();
        let d = TreeDecomposition {
            tree_edges: vec![(0, 1)],
            bags: vec![set(&[0, 1]), set(&[1])],
        };
        assert_eq!(
            d.validate(&p3).unwrap(),
            Some(Violation::VertexCover { vertex: 2 })
        );
        let d = PathDecomposition::new(vec![set(&[0, 1]), set(&[1, 2]), set(&[0])]);
        assert_eq!(
            d.validate(&p3).unwrap(),
            Some(Violation::ConnectedSubtree { vertex: 0 })
        );
        let t = d.to_tree();
        assert_eq!(
            t.validate(&p3).unwrap(),
            Some(Violation::ConnectedSubtree { vertex: 0 })
        );
    }

    #[test]
    fn malformed_trees_are_errors() {
        let p3 = make_path(3).unwrap();
        let bags = vec![p3.vertices(); 3];
        for edges in [
            vec![(0, 1)],
            vec![(0, 1), (1, 2), (2, 0)],
            vec![(0, 1), (0, 1)],
            vec![(0, 3), (1, 2)],
        ] {
            let d = TreeDecomposition {
                tree_edges: edges,
                bags: bags.clone(),
            };
            assert!(matches!(d.validate(&p3), Err(Error::InvalidStructure(_))));
        }
        let d = TreeDecomposition {
            tree_edges: vec![],
            bags: vec![set(&[7])],
        };
        assert!(matches!(d.validate(&p3), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn empty_bags_are_stripped() {
        let p3 = make_path(3).unwrap();
        let d = PathDecomposition::new(vec![set(&[0, 1]), VertexSet::EMPTY, set(&[1, 2])]);
        assert_eq!(d.len(), 2);
        assert_eq!(d.validate(&p3).unwrap(), None);
        let none = PathDecomposition::new(vec![]);
        let empty = Graph::empty(0).unwrap();
        assert_eq!(decomposition_chromatic_number(&empty, &none).unwrap(), 0);
    }

    #[test]
    fn enumeration_bags() {
        let edgeless = Graph::empty(4).unwrap();
        let p = path_decomposition_from_enumeration(&edgeless, &e(&[2, 0, 3, 1])).unwrap();
        assert_eq!(p.bags(), &[set(&[2]), set(&[0]), set(&[3]), set(&[1])]);

        let k2 = make_complete(2).unwrap();
        let p = path_decomposition_from_enumeration(&k2, &e(&[0, 1])).unwrap();
        assert_eq!(p.bags(), &[set(&[0, 1]), set(&[1])]);
    }

    #[test]
    fn cycle_bags_match_hand_evaluation() {
        // v1..v5 are 0..4; hand-evaluated X_l for the cyclic order
        let c5 = make_cycle(5).unwrap();
        let p = path_decomposition_from_enumeration(&c5, &Enumeration::identity(5)).unwrap();
        let expected = [
            set(&[4, 0, 1]),
            set(&[4, 1, 2]),
            set(&[4, 2, 3]),
            set(&[3, 4]),
            set(&[4]),
        ];
        assert_eq!(p.bags(), &expected);

        // independent set-algebra evaluation of the same formula
        for l in 0..5 {
            let prefix: Vec<usize> = (0..=l).collect();
            let mut closed: Vec<usize> = prefix.clone();
            for &v in &prefix {
                closed.extend([(v + 1) % 5, (v + 4) % 5]);
            }
            closed.sort_unstable();
            closed.dedup();
            closed.retain(|&w| w >= l);
            assert_eq!(p.bags()[l].to_vec(), closed);
        }
        assert_eq!(p.validate(&c5).unwrap(), None);
    }

    #[test]
    fn conversion_from_path_decomposition() {
        let k4 = make_complete(4).unwrap();
        let single = PathDecomposition::new(vec![k4.vertices()]);
        let sigma = enumeration_from_path_decomposition(&k4, &single).unwrap();
        assert_eq!(sigma, Enumeration::identity(4));
        assert!(enumeration_chromatic_number(&k4, &sigma).unwrap() <= 4);

        let p3 = make_path(3).unwrap();
        let d = PathDecomposition::new(vec![set(&[0, 1]), set(&[1, 2])]);
        let sigma = enumeration_from_path_decomposition(&p3, &d).unwrap();
        assert_eq!(sigma, e(&[0, 1, 2]));
        assert_eq!(enumeration_chromatic_number(&p3, &sigma).unwrap(), 2);

        let bad = PathDecomposition::new(vec![set(&[0, 1])]);
        assert!(enumeration_from_path_decomposition(&p3, &bad).is_err());
    }

    #[test]
    fn special_enumerations() {
        let k2 = make_complete(2).unwrap();
        assert!(is_special_enumeration(&k2, &e(&[0, 1]), 2).unwrap());
        assert!(is_special_enumeration(&k2, &e(&[1, 0]), 2).unwrap());

        let edgeless = Graph::empty(3).unwrap();
        assert!(is_special_enumeration(&edgeless, &e(&[1, 2, 0]), 1).unwrap());

        let c5 = make_cycle(5).unwrap();
        let mut perm: Vec<usize> = (0..5).collect();
        let mut count = 0;
        loop {
            assert!(!is_special_enumeration(&c5, &e(&perm), 2).unwrap());
            count += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        assert_eq!(count, 120);
        assert!(is_special_enumeration(&c5, &Enumeration::identity(4), 2).is_err());
    }
}
