//! Vertex connectivity through unit-capacity max-flow on the split digraph.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub value: usize,
    /// A minimum separating set together with the pair it separates. Absent
    /// for complete graphs, which have no vertex cut.
    pub cut: Option<VertexCut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCut {
    pub vertices: VertexSet,
    pub separates: (usize, usize),
}

pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    Ok(connectivity_with_cut(g)?.value)
}

/// Minimum vertex cut over all non-adjacent pairs. Complete graphs report
/// `n - 1`.
pub fn connectivity_with_cut(g: &Graph) -> Result<Connectivity> {
    let n = g.order();
    if n == 0 {
        return Err(Error::param("vertex connectivity of the empty graph"));
    }
    let mut best = Connectivity {
        value: n - 1,
        cut: None,
    };
    let mut net = SplitNetwork::new(g);
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let (flow, cut) = net.min_cut(s, t, best.value);
            if flow < best.value {
                best = Connectivity {
                    value: flow,
                    cut: Some(VertexCut {
                        vertices: cut,
                        separates: (s, t),
                    }),
                };
                if flow == 0 {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}

/// Does removing `cut` leave `s` and `t` in different components?
pub fn separates(g: &Graph, cut: VertexSet, s: usize, t: usize) -> bool {
    if cut.contains(s) || cut.contains(t) {
        return false;
    }
    !g.component_of(s, g.vertices() - cut).contains(t)
}

struct Arc {
    to: usize,
    cap: u32,
}

// Node 2v is v_in, 2v+1 is v_out; arc 2k and 2k+1 are mutual reverses.
struct SplitNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    initial: Vec<u32>,
}

const INF: u32 = u32::MAX / 2;

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let nodes = 2 * g.order();
        let mut net = SplitNetwork {
            nodes,
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            initial: Vec::new(),
        };
        for v in 0..g.order() {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in g.edges() {
            net.add_arc(2 * u + 1, 2 * v, INF);
            net.add_arc(2 * v + 1, 2 * u, INF);
        }
        net.initial = net.arcs.iter().map(|a| a.cap).collect();
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn reset(&mut self) {
        for (a, &c) in self.arcs.iter_mut().zip(&self.initial) {
            a.cap = c;
        }
    }

    /// Max number of internally disjoint s-t paths, capped at `limit`, and the
    /// separating set read off the residual graph when the cap is not reached.
    fn min_cut(&mut self, s: usize, t: usize, limit: usize) -> (usize, VertexSet) {
        self.reset();
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        let mut parent = vec![usize::MAX; self.nodes];
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            let reached = self.bfs(source, sink, &mut parent);
            if !reached {
                break;
            }
            let mut node = sink;
            while node != source {
                let a = parent[node];
                self.arcs[a].cap -= 1;
                self.arcs[a ^ 1].cap += 1;
                node = self.arcs[a ^ 1].to;
            }
            flow += 1;
        }
        if flow >= limit {
            return (flow, VertexSet::EMPTY);
        }
        // parent now marks the residual-reachable side
        let reach = |x: usize| x == source || parent[x] != usize::MAX;
        let cut = (0..self.nodes / 2)
            .filter(|&v| reach(2 * v) && !reach(2 * v + 1))
            .collect();
        (flow, cut)
    }

    fn bfs(&self, source: usize, sink: usize, parent: &mut [usize]) -> bool {
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && arc.to != source && parent[arc.to] == usize::MAX {
                    parent[arc.to] = a;
                    if arc.to == sink {
                        return true;
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_path};

    #[test]
    fn complete_graphs_have_n_minus_one() {
        for n in 1..=6 {
            let k = make_complete(n).unwrap();
            let c = connectivity_with_cut(&k).unwrap();
            assert_eq!(c.value, n - 1);
            assert!(c.cut.is_none());
        }
    }

    #[test]
    fn cycles_are_two_connected() {
        for n in 4..=9 {
            let c = connectivity_with_cut(&make_cycle(n).unwrap()).unwrap();
            assert_eq!(c.value, 2);
            let cut = c.cut.unwrap();
            assert_eq!(cut.vertices.len(), 2);
            let (s, t) = cut.separates;
            assert!(separates(&make_cycle(n).unwrap(), cut.vertices, s, t));
        }
    }

    #[test]
    fn paths_and_disconnected() {
        let p = make_path(5).unwrap();
        assert_eq!(vertex_connectivity(&p).unwrap(), 1);
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&g).unwrap(), 0);
        assert!(vertex_connectivity(&Graph::empty(0).unwrap()).is_err());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        // exhaustive: smallest set whose removal disconnects (or leaves <= 1 vertex)
        fn brute(g: &Graph) -> usize {
            let n = g.order();
            let mut best = n - 1;
            for bits in 0u32..(1 << n) {
                let cut = VertexSet::from_bits(bits as u128);
                let rest = g.vertices() - cut;
                if rest.len() >= 2 {
                    let first = rest.first().unwrap();
                    if g.component_of(first, rest) != rest {
                        best = best.min(cut.len());
                    }
                }
            }
            best
        }
        let n = 6;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for code in (0u32..1 << pairs.len()).step_by(97) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(vertex_connectivity(&g).unwrap(), brute(&g), "code {code}");
        }
    }
}
