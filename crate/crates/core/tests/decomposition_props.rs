use pathchrom_core::coloring::chromatic_number_of_set;
use pathchrom_core::corpus::{
    self, graphs_up_to_isomorphism, random_graph, random_path_decomposition,
};
use pathchrom_core::decomposition::{enumeration_chromatic_number, next_permutation};
use pathchrom_core::dp::bag_of_prefix;
use pathchrom_core::{
    brute_force_path_chromatic, decomposition_chromatic_number,
    enumeration_from_path_decomposition, is_special_enumeration,
    path_decomposition_from_enumeration, validate_tree_decomposition, Decomposition, Enumeration,
    Graph, PathDecomposition, TreeDecomposition, VertexSet, Violation,
};
use rand::Rng;

fn all_orders(n: usize, mut f: impl FnMut(&Enumeration)) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        f(&Enumeration::new(perm.clone()).unwrap());
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

#[test]
fn conversion_never_increases_chromatic_number() {
    let mut rng = corpus::rng(0x11);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let slots = rng.gen_range(1..=2 * n);
        let d = random_path_decomposition(&mut rng, &g, slots);
        assert_eq!(d.validate(&g).unwrap(), None);
        let sigma = enumeration_from_path_decomposition(&g, &d).unwrap();
        let converted = enumeration_chromatic_number(&g, &sigma).unwrap();
        assert!(converted <= decomposition_chromatic_number(&g, &d).unwrap());
    }
}

#[test]
fn enumeration_decompositions_are_valid() {
    for n in 1..=5 {
        for g in graphs_up_to_isomorphism(n, false).unwrap() {
            all_orders(n, |sigma| {
                let p = path_decomposition_from_enumeration(&g, sigma).unwrap();
                assert_eq!(p.validate(&g).unwrap(), None);
                assert_eq!(p.len(), n);
            });
        }
    }
}

#[test]
fn prefix_bags_match_enumeration_bags() {
    for n in 1..=6 {
        for g in graphs_up_to_isomorphism(n, false).unwrap() {
            all_orders(n, |sigma| {
                let p = path_decomposition_from_enumeration(&g, sigma).unwrap();
                let mut prefix = VertexSet::EMPTY;
                for (l, &v) in sigma.as_slice().iter().enumerate() {
                    prefix.insert(v);
                    assert_eq!(bag_of_prefix(&g, prefix, v).unwrap(), p.bags()[l]);
                }
            });
        }
    }
}

/// Both minima equal χ_P: random decompositions never beat the best
/// enumeration, and each enumeration's own decomposition is among the
/// candidates.
#[test]
fn minimum_over_enumerations_equals_minimum_over_decompositions() {
    let mut rng = corpus::rng(0x22);
    for n in 1..=5 {
        for g in graphs_up_to_isomorphism(n, false).unwrap() {
            let mut over_orders = usize::MAX;
            let mut over_decompositions = usize::MAX;
            all_orders(n, |sigma| {
                let p = path_decomposition_from_enumeration(&g, sigma).unwrap();
                let chi = decomposition_chromatic_number(&g, &p).unwrap();
                over_orders = over_orders.min(chi);
                over_decompositions = over_decompositions.min(chi);
            });
            for _ in 0..50 {
                let d = random_path_decomposition(&mut rng, &g, 2 * n);
                let chi = decomposition_chromatic_number(&g, &d).unwrap();
                assert!(chi >= over_orders);
                over_decompositions = over_decompositions.min(chi);
            }
            assert_eq!(over_orders, over_decompositions);
            assert_eq!(over_orders, brute_force_path_chromatic(&g).unwrap());
        }
    }
}

#[test]
fn special_bags_drop_one_colour_without_their_entry_vertex() {
    let mut graphs_with_special = 0;
    for n in 1..=6 {
        for g in graphs_up_to_isomorphism(n, false).unwrap() {
            let k = brute_force_path_chromatic(&g).unwrap();
            let mut any = false;
            all_orders(n, |sigma| {
                if !is_special_enumeration(&g, sigma, k).unwrap() {
                    return;
                }
                any = true;
                let p = path_decomposition_from_enumeration(&g, sigma).unwrap();
                for (j, &v) in sigma.as_slice().iter().enumerate() {
                    let bag = p.bags()[j];
                    if chromatic_number_of_set(&g, bag) == k {
                        assert_eq!(chromatic_number_of_set(&g, bag.without(v)), k - 1);
                    }
                }
            });
            graphs_with_special += any as usize;
        }
    }
    assert!(graphs_with_special > 100);
}

#[test]
fn validator_reports_each_axiom() {
    let c4 = pathchrom_core::make_cycle(4).unwrap();
    let set = |vs: &[usize]| vs.iter().copied().collect::<VertexSet>();
    let split = TreeDecomposition {
        tree_edges: vec![(0, 1)],
        bags: vec![set(&[0, 1]), set(&[2, 3])],
    };
    let violation = validate_tree_decomposition(&c4, &split).unwrap();
    assert_eq!(violation, Some(Violation::EdgeCover { u: 0, v: 3 }));

    let whole = TreeDecomposition {
        tree_edges: vec![],
        bags: vec![c4.vertices()],
    };
    assert_eq!(validate_tree_decomposition(&c4, &whole).unwrap(), None);

    let missing = PathDecomposition::new(vec![set(&[0, 1, 2])]);
    assert_eq!(
        missing.validate(&c4).unwrap(),
        Some(Violation::VertexCover { vertex: 3 })
    );

    let broken = PathDecomposition::new(vec![set(&[0, 1, 3]), set(&[1, 2]), set(&[2, 3])]);
    assert_eq!(
        broken.validate(&c4).unwrap(),
        Some(Violation::ConnectedSubtree { vertex: 3 })
    );

    let cyclic = TreeDecomposition {
        tree_edges: vec![(0, 1), (1, 2), (2, 0)],
        bags: vec![c4.vertices(); 3],
    };
    assert!(validate_tree_decomposition(&c4, &cyclic).is_err());
}

#[test]
fn empty_decomposition_has_chromatic_number_zero() {
    let g = Graph::empty(0).unwrap();
    let d = PathDecomposition::new(vec![VertexSet::EMPTY]);
    assert!(d.is_empty());
    assert_eq!(decomposition_chromatic_number(&g, &d).unwrap(), 0);
}
