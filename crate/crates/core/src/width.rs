//! Exact treewidth and pathwidth for small graphs, decomposition checking, and
//! the width bound for graph powers.
//!
//! Treewidth is the elimination-ordering subset DP
//! `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` are
//! the vertices outside `S + v` reachable from `v` through `S`. Pathwidth is
//! vertex separation number over the subset lattice:
//! `PW(S) = max(|boundary(S)|, min_{v in S} PW(S - v))`. Both tables are
//! clipped at a greedy upper bound, and both reconstruct a decomposition.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::WidthError;
use crate::graph::{Edge, Graph, Vertex, VertexSet};

pub const TREE_CAP: usize = 20;
pub const PATH_CAP: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WidthKind {
    Tree,
    Path,
}

impl fmt::Display for WidthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WidthKind::Tree => "tree",
            WidthKind::Path => "path",
        })
    }
}

/// Tree or path decomposition. For paths the bag order is the path and
/// `tree_edges` stays empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: WidthKind,
    pub bags: Vec<Vec<Vertex>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { bag: usize, vertex: Vertex },
    NotATree,
    PathWithTreeEdges,
    VertexUncovered(Vertex),
    EdgeUncovered(Edge),
    OccurrenceDisconnected(Vertex),
    NestedBags { inner: usize, outer: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} names vertex {vertex}, which is out of range")
            }
            Violation::NotATree => f.write_str("bag structure is not a tree"),
            Violation::PathWithTreeEdges => f.write_str("path decomposition carries tree edges"),
            Violation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            Violation::EdgeUncovered(e) => write!(f, "edge {e} is in no bag"),
            Violation::OccurrenceDisconnected(v) => {
                write!(f, "bags containing vertex {v} are not connected")
            }
            Violation::NestedBags { inner, outer } => {
                write!(f, "bag {inner} is contained in bag {outer}")
            }
        }
    }
}

/// Checks the three decomposition conditions, plus inclusion-incomparability
/// of bags for path decompositions. Reports the first violation found.
pub fn validate_decomposition(g: &Graph, dec: &Decomposition) -> Result<(), Violation> {
    let n = g.n();
    let bags: Vec<VertexSet> = dec
        .bags
        .iter()
        .enumerate()
        .map(|(i, bag)| {
            bag.iter()
                .map(|&v| {
                    if v < n {
                        Ok(v)
                    } else {
                        Err(Violation::VertexOutOfRange { bag: i, vertex: v })
                    }
                })
                .collect::<Result<Vec<_>, _>>()
                .map(|vs| VertexSet::from_vertices(n, vs))
        })
        .collect::<Result<_, _>>()?;

    let tree_adj: Vec<Vec<usize>> = match dec.kind {
        WidthKind::Path => {
            if !dec.tree_edges.is_empty() {
                return Err(Violation::PathWithTreeEdges);
            }
            (0..bags.len())
                .map(|i| {
                    let mut a = Vec::new();
                    if i > 0 {
                        a.push(i - 1);
                    }
                    if i + 1 < bags.len() {
                        a.push(i + 1);
                    }
                    a
                })
                .collect()
        }
        WidthKind::Tree => {
            let t = bags.len();
            if t > 0 && dec.tree_edges.len() != t - 1 {
                return Err(Violation::NotATree);
            }
            let mut adj = vec![Vec::new(); t];
            for &(a, b) in &dec.tree_edges {
                if a >= t || b >= t || a == b {
                    return Err(Violation::NotATree);
                }
                adj[a].push(b);
                adj[b].push(a);
            }
            if t > 0 && reachable(&adj, 0, |_| true).len() != t {
                return Err(Violation::NotATree);
            }
            adj
        }
    };

    for v in g.vertices() {
        if !bags.iter().any(|b| b.contains(v)) {
            return Err(Violation::VertexUncovered(v));
        }
    }
    for e in g.edges() {
        if !bags.iter().any(|b| b.contains(e.lo()) && b.contains(e.hi())) {
            return Err(Violation::EdgeUncovered(e));
        }
    }
    for v in g.vertices() {
        let holding: Vec<usize> = (0..bags.len()).filter(|&i| bags[i].contains(v)).collect();
        let reached = reachable(&tree_adj, holding[0], |i| bags[i].contains(v));
        if reached.len() != holding.len() {
            return Err(Violation::OccurrenceDisconnected(v));
        }
    }
    if dec.kind == WidthKind::Path {
        for i in 0..bags.len() {
            for j in 0..bags.len() {
                if i != j && bags[i].is_subset(&bags[j]) && (bags[i] != bags[j] || i > j) {
                    return Err(Violation::NestedBags { inner: i, outer: j });
                }
            }
        }
    }
    Ok(())
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if allowed(y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

pub fn is_valid_decomposition(g: &Graph, dec: &Decomposition) -> bool {
    validate_decomposition(g, dec).is_ok()
}

/// `(base_width + 1) * max_degree^(floor(k/2) + 1)`, saturating at `u64::MAX`.
pub fn power_width_bound(base_width: u64, max_degree: u64, k: u32) -> u64 {
    assert!(k >= 1, "power exponent must be at least 1");
    max_degree
        .checked_pow(k / 2 + 1)
        .and_then(|p| p.checked_mul(base_width.checked_add(1)?))
        .unwrap_or(u64::MAX)
}

pub fn exact_width(g: &Graph, kind: WidthKind) -> Result<(usize, Decomposition), WidthError> {
    let cap = match kind {
        WidthKind::Tree => TREE_CAP,
        WidthKind::Path => PATH_CAP,
    };
    exact_width_capped(g, kind, cap)
}

/// Like [`exact_width`] with an explicit vertex cap (at most 30).
pub fn exact_width_capped(
    g: &Graph,
    kind: WidthKind,
    cap: usize,
) -> Result<(usize, Decomposition), WidthError> {
    let cap = cap.min(30);
    let n = g.n();
    if n > cap {
        let upper_bound = match kind {
            WidthKind::Tree => tree_decomposition_from_order(g, &min_degree_order(g)).width(),
            WidthKind::Path => path_decomposition_from_order(g, &greedy_path_order(g)).width(),
        };
        return Err(WidthError::CapExceeded { n, cap, upper_bound });
    }
    let dec = match kind {
        WidthKind::Tree => tree_decomposition_from_order(g, &treewidth_order(g)),
        WidthKind::Path => path_decomposition_from_order(g, &pathwidth_order(g)),
    };
    Ok((dec.width(), dec))
}

fn masks(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

fn bits(mut s: u32) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(v)
        }
    })
}

/// Lower bound on treewidth: the largest minimum degree of any subgraph.
pub fn degeneracy(g: &Graph) -> usize {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; g.n()];
    let mut best = 0;
    for _ in 0..g.n() {
        let v = (0..g.n())
            .filter(|&v| !removed[v])
            .min_by_key(|&v| deg[v])
            .expect("vertices remain");
        best = best.max(deg[v]);
        removed[v] = true;
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

/// Optimal elimination order (first eliminated first).
fn treewidth_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let greedy = min_degree_order(g);
    if n <= 1 {
        return greedy;
    }
    let ub = tree_decomposition_from_order(g, &greedy).width();
    if ub <= degeneracy(g) {
        return greedy;
    }
    let nbr = masks(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let clip = ub as u8;
    let mut tw = vec![0u8; size];
    let mut choice = vec![0u8; size];
    for s in 1..size as u32 {
        let mut best = clip;
        let mut best_v = s.trailing_zeros() as u8;
        for v in bits(s) {
            let prev = s & !(1 << v);
            let t = tw[prev as usize];
            if t >= best {
                continue;
            }
            let mut comp = 1u32 << v;
            let reach = loop {
                let nb = bits(comp).fold(0u32, |m, x| m | nbr[x]);
                let grow = nb & prev & !comp;
                if grow == 0 {
                    break nb;
                }
                comp |= grow;
            };
            let q = (reach & !(prev | (1 << v))).count_ones() as u8;
            let val = t.max(q);
            if val < best {
                best = val;
                best_v = v as u8;
            }
        }
        tw[s as usize] = best;
        choice[s as usize] = best_v;
    }
    if tw[full as usize] >= clip {
        return greedy;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

/// Min-degree elimination with fill-in; ties go to the lowest id.
pub fn min_degree_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut rows: Vec<VertexSet> = g.vertices().map(|v| g.neighbor_set(v).clone()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| rows[v].len())
            .expect("vertices remain");
        alive[v] = false;
        order.push(v);
        let nbrs = rows[v].to_vec();
        for &a in &nbrs {
            rows[a].remove(v);
            for &b in &nbrs {
                if a != b {
                    rows[a].insert(b);
                }
            }
        }
    }
    order
}

/// Builds the tree decomposition induced by an elimination order.
pub fn tree_decomposition_from_order(g: &Graph, order: &[Vertex]) -> Decomposition {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut rows: Vec<VertexSet> = g.vertices().map(|v| g.neighbor_set(v).clone()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(n);
    for &v in order {
        // rows[v] now holds exactly the later neighbours in the filled graph.
        let later = rows[v].to_vec();
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        parent.push(later.iter().map(|&w| pos[w]).min());
        for &a in &later {
            rows[a].remove(v);
            for &b in &later {
                if a != b {
                    rows[a].insert(b);
                }
            }
        }
    }
    let mut tree_edges = Vec::new();
    let mut last_root: Option<usize> = None;
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => tree_edges.push((i, *p)),
            None => {
                if let Some(r) = last_root {
                    tree_edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    Decomposition {
        kind: WidthKind::Tree,
        bags,
        tree_edges,
    }
}

/// Optimal vertex-separation order.
fn pathwidth_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let greedy = greedy_path_order(g);
    if n <= 1 {
        return greedy;
    }
    let ub = path_decomposition_from_order(g, &greedy).width();
    if ub <= degeneracy(g) {
        return greedy;
    }
    let nbr = masks(g);
    let size = 1usize << n;
    let full = (size - 1) as u32;
    let clip = ub as u8;
    let mut pw = vec![0u8; size];
    let mut choice = vec![0u8; size];
    for s in 1..size as u32 {
        let boundary = bits(s).filter(|&v| nbr[v] & !s != 0).count() as u8;
        if boundary >= clip {
            pw[s as usize] = clip;
            choice[s as usize] = s.trailing_zeros() as u8;
            continue;
        }
        let mut best = clip;
        let mut best_v = s.trailing_zeros() as u8;
        for v in bits(s) {
            let t = pw[(s & !(1 << v)) as usize];
            if t < best {
                best = t;
                best_v = v as u8;
            }
        }
        pw[s as usize] = best.max(boundary);
        choice[s as usize] = best_v;
    }
    if pw[full as usize] >= clip {
        return greedy;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

/// Greedy vertex-separation order: always add the vertex that leaves the
/// smallest boundary, lowest id on ties.
pub fn greedy_path_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut placed = VertexSet::new(n);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed.contains(v))
            .min_by_key(|&v| {
                let mut next = placed.clone();
                next.insert(v);
                boundary_size(g, &next)
            })
            .expect("vertices remain");
        placed.insert(v);
        order.push(v);
    }
    order
}

fn boundary_size(g: &Graph, set: &VertexSet) -> usize {
    set.iter()
        .filter(|&u| g.neighbors(u).iter().any(|&w| !set.contains(w)))
        .count()
}

/// Path decomposition of a vertex order: bag `i` holds `v_i` and every
/// earlier vertex that still has a neighbour at or after position `i`.
/// Bags contained in a neighbouring bag are dropped.
pub fn path_decomposition_from_order(g: &Graph, order: &[Vertex]) -> Decomposition {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // last[v]: position of v's last neighbour in the order (or its own).
    let last: Vec<usize> = g
        .vertices()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&w| pos[w])
                .max()
                .unwrap_or(0)
                .max(pos[v])
        })
        .collect();
    let mut bags: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    for (i, &v) in order.iter().enumerate() {
        let mut bag: Vec<Vertex> = order[..i].iter().copied().filter(|&u| last[u] >= i).collect();
        bag.push(v);
        bag.sort_unstable();
        // Nested bags can only be neighbours; compare against the last kept.
        if let Some(prev) = bags.last() {
            if is_sorted_subset(&bag, prev) {
                continue;
            }
        }
        while let Some(prev) = bags.last() {
            if is_sorted_subset(prev, &bag) {
                bags.pop();
            } else {
                break;
            }
        }
        bags.push(bag);
    }
    Decomposition {
        kind: WidthKind::Path,
        bags,
        tree_edges: Vec::new(),
    }
}

fn is_sorted_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// Decides `pw(g) <= k` by memoised search over vertex-separation prefixes,
/// with no vertex cap.
pub fn pathwidth_at_most(g: &Graph, k: usize) -> bool {
    g.connected_components().into_iter().all(|comp| {
        if comp.len() <= k + 1 {
            return true;
        }
        let sub = g.induced_subgraph(&comp);
        if sub.m() > (k + 1) * sub.n() {
            // width-k graphs have fewer than (k+1) n edges
            return false;
        }
        let mut search = PrefixSearch {
            g: &sub,
            k,
            failed: BTreeSet::new(),
        };
        search.run(VertexSet::new(sub.n()))
    })
}

struct PrefixSearch<'a> {
    g: &'a Graph,
    k: usize,
    failed: BTreeSet<Vec<usize>>,
}

impl PrefixSearch<'_> {
    fn key(set: &VertexSet) -> Vec<usize> {
        set.iter().collect()
    }

    fn run(&mut self, mut placed: VertexSet) -> bool {
        let n = self.g.n();
        // Vertices whose whole neighbourhood is placed never enlarge the
        // boundary, so adding them first is always safe.
        loop {
            let free = (0..n).find(|&v| {
                !placed.contains(v) && self.g.neighbors(v).iter().all(|&w| placed.contains(w))
            });
            match free {
                Some(v) => placed.insert(v),
                None => break,
            }
        }
        if placed.len() == n {
            return true;
        }
        let key = Self::key(&placed);
        if self.failed.contains(&key) {
            return false;
        }
        for v in 0..n {
            if placed.contains(v) {
                continue;
            }
            let mut next = placed.clone();
            next.insert(v);
            if boundary_size(self.g, &next) <= self.k && self.run(next) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_have_treewidth_one() {
        let spider = Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        for g in [Graph::path(5), Graph::star(4), spider] {
            let (w, dec) = exact_width(&g, WidthKind::Tree).unwrap();
            assert_eq!(w, 1);
            validate_decomposition(&g, &dec).unwrap();
        }
    }

    #[test]
    fn clique_width() {
        let (w, dec) = exact_width(&Graph::complete(4), WidthKind::Tree).unwrap();
        assert_eq!(w, 3);
        assert!(is_valid_decomposition(&Graph::complete(4), &dec));
    }

    #[test]
    fn k23_pathwidth_two() {
        let g = Graph::complete_bipartite(2, 3);
        let (w, dec) = exact_width(&g, WidthKind::Path).unwrap();
        assert_eq!(w, 2);
        validate_decomposition(&g, &dec).unwrap();
        assert!(pathwidth_at_most(&g, 2));
        assert!(!pathwidth_at_most(&g, 1));
    }

    #[test]
    fn validation_examples() {
        let p3 = Graph::path(3);
        let good = Decomposition {
            kind: WidthKind::Path,
            bags: vec![vec![0, 1], vec![1, 2]],
            tree_edges: vec![],
        };
        assert_eq!(validate_decomposition(&p3, &good), Ok(()));
        let bad = Decomposition {
            kind: WidthKind::Path,
            bags: vec![vec![0, 1], vec![2]],
            tree_edges: vec![],
        };
        assert_eq!(
            validate_decomposition(&p3, &bad),
            Err(Violation::EdgeUncovered(Edge::new(1, 2)))
        );
        let c4 = Graph::cycle(4);
        let one = Decomposition {
            kind: WidthKind::Tree,
            bags: vec![vec![0, 1, 2, 3]],
            tree_edges: vec![],
        };
        assert_eq!(validate_decomposition(&c4, &one), Ok(()));
        assert_eq!(one.width(), 3);
    }

    #[test]
    fn validation_catches_broken_occurrence_and_nesting() {
        let p3 = Graph::path(3);
        let split = Decomposition {
            kind: WidthKind::Path,
            bags: vec![vec![0, 1], vec![1, 2], vec![0]],
            tree_edges: vec![],
        };
        assert_eq!(
            validate_decomposition(&p3, &split),
            Err(Violation::OccurrenceDisconnected(0))
        );
        let nested = Decomposition {
            kind: WidthKind::Path,
            bags: vec![vec![0, 1], vec![1], vec![1, 2]],
            tree_edges: vec![],
        };
        assert_eq!(
            validate_decomposition(&p3, &nested),
            Err(Violation::NestedBags { inner: 1, outer: 0 })
        );
        let not_tree = Decomposition {
            kind: WidthKind::Tree,
            bags: vec![vec![0, 1], vec![1, 2]],
            tree_edges: vec![],
        };
        assert_eq!(validate_decomposition(&p3, &not_tree), Err(Violation::NotATree));
    }

    #[test]
    fn power_bound_values() {
        assert_eq!(power_width_bound(2, 42, 4), 222_264);
        assert_eq!(power_width_bound(1, 2, 2), 8);
        assert_eq!(power_width_bound(2, 2, 2), 12);
        assert_eq!(power_width_bound(3, 1511, 160), u64::MAX);
    }

    #[test]
    fn squared_c8_has_treewidth_four() {
        let sq = Graph::cycle(8).square();
        let (w, dec) = exact_width(&sq, WidthKind::Tree).unwrap();
        assert_eq!(w, 4);
        validate_decomposition(&sq, &dec).unwrap();
        assert!(w as u64 <= power_width_bound(2, 2, 2));
    }

    #[test]
    fn cap_exceeded_reports_upper_bound() {
        let g = Graph::cycle(25);
        match exact_width(&g, WidthKind::Tree) {
            Err(WidthError::CapExceeded { n, cap, upper_bound }) => {
                assert_eq!((n, cap), (25, TREE_CAP));
                assert_eq!(upper_bound, 2);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_tiny_graphs() {
        let (w, dec) = exact_width(&Graph::empty(0), WidthKind::Tree).unwrap();
        assert_eq!(w, 0);
        assert!(dec.bags.is_empty());
        let (w, dec) = exact_width(&Graph::empty(3), WidthKind::Path).unwrap();
        assert_eq!(w, 0);
        validate_decomposition(&Graph::empty(3), &dec).unwrap();
    }
}
