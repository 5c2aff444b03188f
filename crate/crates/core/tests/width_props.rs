mod common;

use common::{connected_graph, graph, tree};
use proptest::prelude::*;
use sqroot_core::families::is_outerplanar;
use sqroot_core::gen::gen_family_graph;
use sqroot_core::width::*;
use sqroot_core::{FamilyKind, Graph};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Treewidth by trying every elimination order.
fn brute_treewidth(g: &Graph) -> usize {
    let n = g.n();
    permutations(n)
        .into_iter()
        .map(|order| {
            let mut adj: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| g.has_edge(a, b)).collect()).collect();
            let mut gone = vec![false; n];
            let mut worst = 0;
            for &v in &order {
                let nb: Vec<usize> = (0..n).filter(|&w| !gone[w] && adj[v][w]).collect();
                worst = worst.max(nb.len());
                for &a in &nb {
                    for &b in &nb {
                        if a != b {
                            adj[a][b] = true;
                        }
                    }
                }
                gone[v] = true;
            }
            worst
        })
        .min()
        .unwrap_or(0)
}

/// Pathwidth as the minimum vertex separation number over all layouts.
fn brute_pathwidth(g: &Graph) -> usize {
    let n = g.n();
    permutations(n)
        .into_iter()
        .map(|order| {
            (0..n)
                .map(|i| {
                    order[..=i]
                        .iter()
                        .filter(|&&v| order[i + 1..].iter().any(|&w| g.has_edge(v, w)))
                        .count()
                })
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap_or(0)
}

#[test]
fn ground_truth_widths() {
    let cases: Vec<(Graph, WidthKind, usize)> = vec![
        (Graph::path(6), WidthKind::Tree, 1),
        (Graph::star(5), WidthKind::Tree, 1),
        (Graph::cycle(7), WidthKind::Tree, 2),
        (Graph::complete(6), WidthKind::Tree, 5),
        (Graph::complete_bipartite(2, 3), WidthKind::Path, 2),
        (Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (1, 6)]).unwrap(), WidthKind::Path, 1),
        (Graph::cycle(8).square(), WidthKind::Tree, 4),
        (common::spider(), WidthKind::Path, 2),
    ];
    for (g, kind, want) in cases {
        let (w, dec) = exact_width(&g, kind).unwrap();
        assert_eq!(w, want, "{g:?} {kind:?}");
        assert_eq!(dec.width(), w);
        validate_decomposition(&g, &dec).unwrap();
    }
    assert!(power_width_bound(2, 2, 2) >= 4);
    assert_eq!(power_width_bound(2, 2, 2), 12);
}

#[test]
fn cap_is_reported() {
    let g = Graph::cycle(40);
    assert!(matches!(exact_width(&g, WidthKind::Path), Err(sqroot_core::WidthError::CapExceeded { .. })));
}

#[test]
fn broken_decompositions_are_caught() {
    let g = Graph::cycle(4);
    let (_, mut dec) = exact_width(&g, WidthKind::Tree).unwrap();
    dec.bags[0].clear();
    assert!(!is_valid_decomposition(&g, &dec));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_brute_force(g in graph(1, 7)) {
        let (tw, td) = exact_width(&g, WidthKind::Tree).unwrap();
        let (pw, pd) = exact_width(&g, WidthKind::Path).unwrap();
        prop_assert_eq!(tw, brute_treewidth(&g));
        prop_assert_eq!(pw, brute_pathwidth(&g));
        prop_assert!(is_valid_decomposition(&g, &td));
        prop_assert!(is_valid_decomposition(&g, &pd));
        prop_assert!(tw <= pw);
        prop_assert!(pathwidth_at_most(&g, pw));
        prop_assert!(pw == 0 || !pathwidth_at_most(&g, pw - 1));
    }

    #[test]
    fn greedy_decompositions_are_valid_upper_bounds(g in graph(1, 12)) {
        let td = tree_decomposition_from_order(&g, &min_degree_order(&g));
        let pd = path_decomposition_from_order(&g, &greedy_path_order(&g));
        prop_assert!(is_valid_decomposition(&g, &td));
        prop_assert!(is_valid_decomposition(&g, &pd));
        let (tw, _) = exact_width(&g, WidthKind::Tree).unwrap();
        prop_assert!(tw <= td.width());
        prop_assert!(degeneracy(&g) <= tw);
    }

    #[test]
    fn trees_have_treewidth_one(t in tree(2, 14)) {
        prop_assert_eq!(exact_width(&t, WidthKind::Tree).unwrap().0, 1);
    }

    #[test]
    fn power_bound_holds(g in connected_graph(2, 7), k in 2u32..=4) {
        let p = g.kth_power(k as usize);
        for kind in [WidthKind::Tree, WidthKind::Path] {
            let (w, _) = exact_width(&g, kind).unwrap();
            let (wk, _) = exact_width(&p, kind).unwrap();
            prop_assert!(wk as u64 <= power_width_bound(w as u64, g.max_degree() as u64, k));
        }
    }

    #[test]
    fn outerplanar_members_have_treewidth_two(n in 1usize..16, seed in 0u64..1000) {
        let g = gen_family_graph(FamilyKind::Outerplanar, n, seed);
        prop_assert!(is_outerplanar(&g));
        let (w, dec) = exact_width(&g, WidthKind::Tree).unwrap();
        prop_assert!(w <= 2);
        prop_assert!(is_valid_decomposition(&g, &dec));
    }
}
