mod common;

use common::{connected_graph, graph};
use proptest::prelude::*;
use sqroot_core::gen::connected_graphs;
use sqroot_core::{Edge, Graph};

#[test]
fn power_composition_on_small_graphs() {
    for n in 1..=6 {
        for g in connected_graphs(n) {
            for a in 1..=3 {
                for b in 1..=3 {
                    assert_eq!(g.kth_power(a).kth_power(b), g.kth_power(a * b), "{g:?} a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn named_squares() {
    assert_eq!(Graph::path(4).square().m(), 5);
    assert_eq!(Graph::star(4).square(), Graph::complete(5));
    assert_eq!(Graph::cycle(5).square(), Graph::complete(5));
    assert_eq!(Graph::cycle(8).square().m(), 16);
}

proptest! {
    #[test]
    fn powers_contain_the_graph(g in graph(1, 9), k in 1usize..4) {
        let p = g.kth_power(k);
        prop_assert!(g.edges().all(|e| p.contains_edge(e)));
        prop_assert_eq!(g.kth_power(1), g.clone());
    }

    #[test]
    fn square_edges_are_distance_two(g in graph(1, 9)) {
        let d = g.all_pairs_distances();
        let sq = g.square();
        for a in g.vertices() {
            for b in a + 1..g.n() {
                prop_assert_eq!(sq.has_edge(a, b), d.get(a, b).at_most(2));
            }
        }
    }

    #[test]
    fn twin_classes_partition(g in graph(1, 9)) {
        let classes = g.true_twin_classes();
        let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
        all.sort();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for c in &classes {
            for &x in c {
                prop_assert_eq!(g.closed_neighbor_set(x).to_vec(), g.closed_neighbor_set(c[0]).to_vec());
            }
        }
    }

    #[test]
    fn components_cover_and_separate(g in graph(1, 10)) {
        let comps = g.connected_components();
        prop_assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), g.n());
        prop_assert_eq!(g.is_connected(), comps.len() == 1);
        for e in g.edges() {
            prop_assert!(comps.iter().any(|c| c.contains(&e.lo()) && c.contains(&e.hi())));
        }
    }

    #[test]
    fn induced_subgraph_keeps_inner_edges(g in connected_graph(2, 8)) {
        let keep: Vec<usize> = g.vertices().filter(|v| v % 2 == 0).collect();
        let h = g.induced_subgraph(&keep);
        prop_assert_eq!(h.n(), keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                prop_assert_eq!(h.has_edge(i, j), g.has_edge(a, b));
            }
        }
    }

    #[test]
    fn edge_removal_and_insertion(g in graph(2, 8)) {
        let e = Edge::new(0, 1);
        prop_assert!(!g.without_edges([e]).contains_edge(e));
        prop_assert!(g.with_edges([e]).contains_edge(e));
        prop_assert_eq!(g.with_edges([e]).without_edges([e]), g.without_edges([e]));
    }
}
