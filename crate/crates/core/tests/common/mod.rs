#![allow(dead_code)]

use proptest::prelude::*;
use sqroot_core::{Edge, Graph};

/// Any simple graph on `lo..=hi` vertices, each pair present with chance 1/2.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[i] {
                        edges.push(Edge::new(a, b));
                    }
                    i += 1;
                }
            }
            Graph::from_edge_set(n, edges).unwrap()
        })
    })
}

pub fn connected_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    graph(lo, hi).prop_filter("connected", |g| g.is_connected())
}

/// A random tree: vertex `v` hangs off one of `0..v`.
pub fn tree(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<proptest::sample::Index>(), n.saturating_sub(1)).prop_map(move |picks| {
            let edges = picks.iter().enumerate().map(|(i, p)| Edge::new(p.index(i + 1), i + 1));
            Graph::from_edge_set(n, edges).unwrap()
        })
    })
}

pub fn spider() -> Graph {
    Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
}
