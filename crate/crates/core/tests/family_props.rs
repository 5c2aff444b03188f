mod common;

use common::graph;
use proptest::prelude::*;
use sqroot_core::families::*;
use sqroot_core::minor::{has_k23_minor, has_k4_minor};
use sqroot_core::width::{exact_width, WidthKind};
use sqroot_core::{FamilyConfig, FamilyKind, Graph};

#[test]
fn names_round_trip() {
    for k in FamilyKind::ALL {
        assert_eq!(FamilyKind::from_name(k.name()), Some(k));
    }
    assert_eq!(FamilyKind::from_name("planar"), None);
}

#[test]
fn pw2_constants_saturate() {
    let c = Pw2Constants::new(10);
    assert_eq!((c.c2, c.c3, c.c4), (1512, 154, u64::MAX));
    assert_eq!(FamilyConfig::pw2().width_cutoff.to_string(), "saturated");
}

#[test]
fn warnings() {
    assert!(FamilyConfig::outerplanar().warnings().is_empty());
    let mut f = FamilyConfig::pw2();
    f.twin_threshold = 3;
    assert_eq!(f.warnings().len(), 1);
    assert_eq!(FamilyConfig::outerplanar().with_max_degree(3).name(), "outerplanar-deg3");
}

#[test]
fn classic_members() {
    assert!(is_outerplanar(&Graph::cycle(9)));
    assert!(!is_outerplanar(&Graph::complete(4)));
    assert!(!is_outerplanar(&Graph::complete_bipartite(2, 3)));
    assert!(is_cactus(&Graph::cycle(5)));
    assert!(!is_cactus(&Graph::complete(4).without_edges([sqroot_core::Edge::new(0, 1)])));
    assert!(is_caterpillar_forest(&Graph::star(6)));
    assert!(!is_caterpillar_forest(&common::spider()));
    assert!(FamilyKind::Pw2.contains(&common::spider()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn membership_matches_definitions(g in graph(1, 8)) {
        prop_assert_eq!(is_outerplanar(&g), !has_k4_minor(&g) && !has_k23_minor(&g));
        let pw = exact_width(&g, WidthKind::Path).unwrap().0;
        prop_assert_eq!(FamilyKind::Pw2.contains(&g), pw <= 2);
        prop_assert_eq!(FamilyKind::Forest.contains(&g), g.is_acyclic());
        let cat = g.is_acyclic() && g.connected_components().iter().all(|c| {
            exact_width(&g.induced_subgraph(c), WidthKind::Path).unwrap().0 <= 1
        });
        prop_assert_eq!(is_caterpillar_forest(&g), cat);
    }

    #[test]
    fn families_are_subgraph_closed(g in graph(2, 8), drop in 0usize..64) {
        let edges = g.edge_vec();
        prop_assume!(!edges.is_empty());
        let h = g.without_edges([edges[drop % edges.len()]]);
        for k in FamilyKind::ALL {
            if k.contains(&g) {
                prop_assert!(k.contains(&h), "{} not closed", k.name());
            }
        }
    }

    #[test]
    fn inclusions(g in graph(1, 8)) {
        if FamilyKind::CaterpillarForest.contains(&g) {
            prop_assert!(FamilyKind::Forest.contains(&g));
        }
        if FamilyKind::Forest.contains(&g) {
            prop_assert!(FamilyKind::Cactus.contains(&g));
        }
        if FamilyKind::Cactus.contains(&g) {
            prop_assert!(FamilyKind::Outerplanar.contains(&g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn minor_fast_paths_match_model_search(g in graph(1, 7)) {
        use sqroot_core::minor::{has_minor_by_model_search, k23, k4};
        prop_assert_eq!(has_k4_minor(&g), has_minor_by_model_search(&g, &k4()).unwrap());
        prop_assert_eq!(has_k23_minor(&g), has_minor_by_model_search(&g, &k23()).unwrap());
    }
}
