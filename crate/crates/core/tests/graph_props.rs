use pathchrom_core::corpus::{self, random_graph};
use pathchrom_core::{
    connectivity_with_cut, make_complete, make_cycle, vertex_connectivity, Graph, VertexSet,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn closed_neighbourhood_is_monotone(g in arb_graph(10), a in any::<u16>(), b in any::<u16>()) {
        let full = g.vertices().bits();
        let small = VertexSet::from_bits(u128::from(a & b) & full);
        let big = VertexSet::from_bits(u128::from(a) & full);
        let ns = g.closed_neighborhood(small).unwrap();
        let nb = g.closed_neighborhood(big).unwrap();
        prop_assert!(small.is_subset(ns));
        prop_assert!(ns.is_subset(nb));
    }

    #[test]
    fn identity_induced_subgraph(g in arb_graph(10)) {
        let sub = g.induced_subgraph(g.vertices()).unwrap();
        prop_assert_eq!(&sub.graph, &g);
        prop_assert_eq!(sub.original, (0..g.order()).collect::<Vec<_>>());
    }

    #[test]
    fn embedding_survives_host_automorphism(n in 3usize..12, shift in 0usize..12, flip in any::<bool>()) {
        // rotations and reflections of C_n
        let c = make_cycle(n).unwrap();
        let auto = |v: usize| if flip { (n + shift - v) % n } else { (v + shift) % n };
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        for map in [vec![0, 1, 2], vec![0, 2, 1], vec![0, 1, 3 % n]] {
            let moved: Vec<usize> = map.iter().map(|&v| auto(v)).collect();
            prop_assert_eq!(
                c.check_induced_embedding(&path, &map).unwrap(),
                c.check_induced_embedding(&path, &moved).unwrap()
            );
        }
    }

    #[test]
    fn minimum_cut_separates(g in arb_graph(9)) {
        let conn = connectivity_with_cut(&g).unwrap();
        if let Some(cut) = conn.cut {
            prop_assert_eq!(cut.vertices.len(), conn.value);
            let (s, t) = cut.separates;
            prop_assert!(pathchrom_core::connectivity::separates(&g, cut.vertices, s, t));
        } else {
            prop_assert_eq!(g.edge_count(), g.order() * (g.order() - 1) / 2);
            prop_assert_eq!(conn.value, g.order() - 1);
        }
    }
}

#[test]
fn family_connectivity() {
    for n in 3..=12 {
        assert_eq!(vertex_connectivity(&make_cycle(n).unwrap()).unwrap(), 2);
    }
    for n in 1..=8 {
        assert_eq!(
            vertex_connectivity(&make_complete(n).unwrap()).unwrap(),
            n - 1
        );
    }
    assert!(vertex_connectivity(&Graph::empty(0).unwrap()).is_err());
}

#[test]
fn small_embedding_examples() {
    let c5 = make_cycle(5).unwrap();
    let k2 = make_complete(2).unwrap();
    assert!(c5.check_induced_embedding(&c5, &[0, 1, 2, 3, 4]).unwrap());
    assert!(c5.check_induced_embedding(&k2, &[1, 2]).unwrap());
    assert!(!c5.check_induced_embedding(&k2, &[1, 3]).unwrap());
    assert!(!c5.check_induced_embedding(&k2, &[1, 1]).unwrap());
    assert!(c5.check_induced_embedding(&k2, &[1]).is_err());
}

#[test]
fn triangle_freeness() {
    assert!(make_cycle(5).unwrap().is_triangle_free());
    assert!(!make_complete(3).unwrap().is_triangle_free());
    let mut rng = corpus::rng(1);
    for _ in 0..50 {
        let g = random_graph(&mut rng, 8, 0.3);
        let brute = (0..8).all(|a| {
            (a + 1..8).all(|b| {
                (b + 1..8).all(|c| !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)))
            })
        });
        assert_eq!(g.is_triangle_free(), brute);
    }
}
