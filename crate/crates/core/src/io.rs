//! DIMACS `.col` and JSON formats for graphs and decompositions.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decomposition::{PathDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const SCHEMA_VERSION: u32 = 1;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses DIMACS edge format. Vertices are 1-based in the text.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut order: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let mut parts = line.split_whitespace();
        match parts.next() {
            None | Some("c") => continue,
            Some("p") => {
                if order.is_some() {
                    return Err(parse_err(line_no, "second problem line"));
                }
                let format = parts.next();
                if !matches!(format, Some("edge") | Some("col")) {
                    return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                }
                let n = parse_num(parts.next(), line_no, "vertex count")?;
                parse_num(parts.next(), line_no, "edge count")?;
                if n > crate::vertex_set::MAX_VERTICES {
                    return Err(parse_err(
                        line_no,
                        format!(
                            "{n} vertices exceeds the limit of {}",
                            crate::vertex_set::MAX_VERTICES
                        ),
                    ));
                }
                order = Some(n);
            }
            Some("e") => {
                let n = order.ok_or_else(|| parse_err(line_no, "edge before problem line"))?;
                let u = parse_num(parts.next(), line_no, "edge endpoint")?;
                let v = parse_num(parts.next(), line_no, "edge endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(parse_err(line_no, format!("vertex {w} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(parse_err(line_no, format!("unknown line type `{other}`"))),
        }
    }
    let n = order.ok_or_else(|| parse_err(text.lines().count().max(1), "missing problem line"))?;
    Graph::from_edges(n, edges)
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

/// Canonical DIMACS text: sorted edges, 1-based, no comments.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    schema: u32,
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub fn graph_to_json(g: &Graph) -> String {
    let doc = GraphJson {
        schema: SCHEMA_VERSION,
        n: g.order(),
        edges: g.edges().collect(),
        labels: g.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&doc).expect("graph serializes") + "\n"
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let doc: GraphJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    check_schema(doc.schema)?;
    let g = Graph::from_edges(doc.n, doc.edges)?;
    match doc.labels {
        Some(labels) => g.with_labels(labels),
        None => Ok(g),
    }
}

fn check_schema(schema: u32) -> Result<()> {
    if schema != SCHEMA_VERSION {
        return Err(parse_err(1, format!("unsupported schema {schema}")));
    }
    Ok(())
}

/// Decomposition file contents. With no `tree_edges` and several nodes the
/// bags form a path, in `order` when given, else in index order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub nodes: usize,
    #[serde(default)]
    pub tree_edges: Vec<(usize, usize)>,
    pub bags: Vec<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedDecomposition {
    Path(PathDecomposition),
    Tree(TreeDecomposition),
}

impl DecompositionJson {
    pub fn from_path(p: &PathDecomposition) -> Self {
        use crate::decomposition::Decomposition;
        DecompositionJson {
            schema: SCHEMA_VERSION,
            nodes: p.len(),
            tree_edges: Vec::new(),
            bags: p.bags().to_vec(),
            order: None,
        }
    }

    pub fn from_tree(t: &TreeDecomposition) -> Self {
        DecompositionJson {
            schema: SCHEMA_VERSION,
            nodes: t.bags.len(),
            tree_edges: t.tree_edges.clone(),
            bags: t.bags.clone(),
            order: None,
        }
    }

    pub fn load(self) -> Result<LoadedDecomposition> {
        check_schema(self.schema)?;
        if self.bags.len() != self.nodes {
            return Err(Error::structure(format!(
                "{} bags for {} nodes",
                self.bags.len(),
                self.nodes
            )));
        }
        if !self.tree_edges.is_empty() {
            if self.order.is_some() {
                return Err(Error::structure(
                    "`order` is only meaningful without tree edges",
                ));
            }
            return Ok(LoadedDecomposition::Tree(TreeDecomposition {
                tree_edges: self.tree_edges,
                bags: self.bags,
            }));
        }
        let bags = match self.order {
            None => self.bags,
            Some(order) => {
                let perm = crate::decomposition::Enumeration::new(order)
                    .map_err(|_| Error::structure("`order` must be a permutation of the nodes"))?;
                if perm.len() != self.nodes {
                    return Err(Error::structure("`order` must list every node"));
                }
                perm.as_slice().iter().map(|&i| self.bags[i]).collect()
            }
        };
        Ok(LoadedDecomposition::Path(PathDecomposition::new(bags)))
    }
}

pub fn decomposition_from_json(text: &str) -> Result<LoadedDecomposition> {
    let doc: DecompositionJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    doc.load()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle};
    use proptest::prelude::*;

    #[test]
    fn parses_triangle() {
        let g = parse_dimacs("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, make_complete(3).unwrap());
    }

    #[test]
    fn parses_edgeless() {
        let g = parse_dimacs("p edge 2 0").unwrap();
        assert_eq!((g.order(), g.edge_count()), (2, 0));
    }

    #[test]
    fn collapses_duplicates() {
        let g = parse_dimacs("p edge 2 3\ne 1 2\ne 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("e 1 2\np edge 2 1\n", 1),
            ("p edge 2 1\n\ne 1 3\n", 3),
            ("c\np edge 2 1\ne 2 2\n", 3),
            ("c only comments\n", 1),
            ("p edge 2 1\nx 1 2\n", 2),
            ("p edge two 1\n", 1),
        ];
        for (text, line) in cases {
            match parse_dimacs(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn canonical_output() {
        assert_eq!(
            write_dimacs(&make_complete(2).unwrap()),
            "p edge 2 1\ne 1 2\n"
        );
        assert_eq!(write_dimacs(&Graph::empty(0).unwrap()), "p edge 0 0\n");
    }

    #[test]
    fn graph_json() {
        let g = make_cycle(4).unwrap();
        let text = graph_to_json(&g);
        assert_eq!(graph_from_json(&text).unwrap(), g);
        assert!(graph_from_json(r#"{"schema":2,"n":1,"edges":[]}"#).is_err());
        assert!(graph_from_json(r#"{"schema":1,"n":2,"edges":[[0,2]]}"#).is_err());
        let labeled =
            graph_from_json(r#"{"schema":1,"n":2,"edges":[[0,1]],"labels":["a","b"]}"#).unwrap();
        assert_eq!(labeled.labels().unwrap(), ["a", "b"]);
    }

    #[test]
    fn decomposition_json() {
        let path =
            decomposition_from_json(r#"{"nodes":2,"bags":[[0,1],[1,2]],"order":[1,0]}"#).unwrap();
        let LoadedDecomposition::Path(p) = path else {
            panic!()
        };
        use crate::decomposition::Decomposition;
        assert_eq!(p.bags()[0].to_vec(), vec![1, 2]);

        let tree =
            decomposition_from_json(r#"{"nodes":2,"tree_edges":[[0,1]],"bags":[[0,1],[1,2]]}"#)
                .unwrap();
        assert!(matches!(tree, LoadedDecomposition::Tree(_)));
        assert!(decomposition_from_json(r#"{"nodes":3,"bags":[[0]]}"#).is_err());
        assert!(decomposition_from_json(r#"{"nodes":2,"bags":[[0],[1]],"order":[0,0]}"#).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n.max(1), 0..n.max(1)), 0..30).prop_map(move |pairs| {
                Graph::from_edges(
                    n,
                    pairs
                        .into_iter()
                        .filter(|(u, v)| u != v && *u < n && *v < n),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn dimacs_round_trip(g in arb_graph()) {
            let text = write_dimacs(&g);
            let back = parse_dimacs(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_dimacs(&back), text);
        }

        #[test]
        fn json_round_trip(g in arb_graph()) {
            prop_assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
        }
    }
}
