//! Simple undirected graphs on the dense vertex range `0..n`.
//!
//! A [`Graph`] is a value: every operation that removes or adds vertices or
//! edges returns a new graph carrying a fresh version id. Anything derived
//! from a graph (for example a [`DistanceMatrix`]) records the version it was
//! computed for, so stale derived data can be detected.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

pub type Vertex = usize;

static NEXT_VERSION: AtomicU64 = AtomicU64::new(1);

fn next_version() -> u64 {
    NEXT_VERSION.fetch_add(1, Ordering::Relaxed)
}

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    /// Panics on a self-loop.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a} is not an edge");
        if a < b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Option<Self> {
        (a != b).then(|| Edge::new(a, b))
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    pub fn other(self, v: Vertex) -> Vertex {
        debug_assert!(self.contains(v));
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Shortest-path length, ordered so that every finite distance is below
/// [`Distance::Infinite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Distance::Finite(d) if d <= k)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Bitset of vertex ids for one graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut set = VertexSet::new(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: Vertex) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.bits.set(v, false);
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

/// Undirected simple graph with sorted adjacency lists and adjacency bit rows.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    rows: Vec<VertexSet>,
    m: usize,
    version: u64,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().map(|e| e.endpoints()).collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            rows: vec![VertexSet::new(n); n],
            m: 0,
            version: next_version(),
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut rows = vec![VertexSet::new(n); n];
        let mut m = 0;
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            if rows[a].contains(b) {
                let e = Edge::new(a, b);
                return Err(GraphError::DuplicateEdge {
                    u: e.lo(),
                    v: e.hi(),
                });
            }
            rows[a].insert(b);
            rows[b].insert(a);
            m += 1;
        }
        let adj = rows.iter().map(VertexSet::to_vec).collect();
        Ok(Graph {
            adj,
            rows,
            m,
            version: next_version(),
        })
    }

    /// Builds a graph from a collection of edges, ignoring repeats.
    pub fn from_edge_set(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut rows = vec![VertexSet::new(n); n];
        for e in edges {
            if e.hi() >= n {
                return Err(GraphError::VertexOutOfRange { vertex: e.hi(), n });
            }
            rows[e.lo()].insert(e.hi());
            rows[e.hi()].insert(e.lo());
        }
        Ok(Self::from_rows(rows))
    }

    fn from_rows(rows: Vec<VertexSet>) -> Self {
        let adj: Vec<Vec<Vertex>> = rows.iter().map(VertexSet::to_vec).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adj,
            rows,
            m,
            version: next_version(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Self::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y)));
        Self::from_edges(a + b, edges).expect("complete bipartite graph is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: Vertex) -> &VertexSet {
        &self.rows[v]
    }

    /// `N[v]` as a bitset.
    pub fn closed_neighbor_set(&self, v: Vertex) -> VertexSet {
        let mut set = self.rows[v].clone();
        set.insert(v);
        set
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.rows[a].contains(b)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.rows[e.lo()].contains(e.hi())
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&b| b > a)
                .map(move |b| Edge::new(a, b))
        })
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn with_edges(&self, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut rows = self.rows.clone();
        for e in edges {
            rows[e.lo()].insert(e.hi());
            rows[e.hi()].insert(e.lo());
        }
        Self::from_rows(rows)
    }

    pub fn without_edges(&self, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut rows = self.rows.clone();
        for e in edges {
            rows[e.lo()].remove(e.hi());
            rows[e.hi()].remove(e.lo());
        }
        Self::from_rows(rows)
    }

    /// Subgraph induced by `keep`; vertex `i` of the result is `keep[i]`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Self {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut rows = vec![VertexSet::new(keep.len()); keep.len()];
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    rows[i].insert(index[w]);
                }
            }
        }
        Self::from_rows(rows)
    }

    /// The graph with `v` removed; vertices above `v` shift down by one.
    pub fn without_vertex(&self, v: Vertex) -> Self {
        let keep: Vec<Vertex> = self.vertices().filter(|&w| w != v).collect();
        self.induced_subgraph(&keep)
    }

    /// BFS distances from `source`, never entering `skip`.
    fn bfs_avoiding(&self, source: Vertex, skip: Option<Vertex>) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n()];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let Distance::Finite(dx) = dist[x] else {
                unreachable!()
            };
            for &y in &self.adj[x] {
                if Some(y) != skip && dist[y] == Distance::Infinite {
                    dist[y] = Distance::Finite(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn bfs(&self, source: Vertex) -> Vec<Distance> {
        self.bfs_avoiding(source, None)
    }

    /// Distances from `source` in `G - removed`. Entry `removed` is infinite.
    pub fn bfs_without(&self, source: Vertex, removed: Vertex) -> Vec<Distance> {
        debug_assert_ne!(source, removed);
        let mut dist = self.bfs_avoiding(source, Some(removed));
        dist[removed] = Distance::Infinite;
        dist
    }

    /// Shortest-path length between `x` and `y` in `G - u`.
    pub fn distance_in_deleted(&self, u: Vertex, x: Vertex, y: Vertex) -> Result<Distance, GraphError> {
        for v in [u, x, y] {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
            }
        }
        if x == u || y == u {
            return Err(GraphError::DeletedVertexQuery { vertex: u });
        }
        Ok(self.bfs_without(x, u)[y])
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.n();
        let mut dist = Vec::with_capacity(n * n);
        for s in self.vertices() {
            dist.extend(self.bfs(s));
        }
        DistanceMatrix {
            version: self.version,
            n,
            dist,
        }
    }

    /// `G^k`: same vertices, an edge for every pair at distance `1..=k`.
    pub fn kth_power(&self, k: usize) -> Self {
        assert!(k >= 1, "graph powers start at k = 1");
        if k == 1 {
            return self.clone();
        }
        let n = self.n();
        let mut rows = vec![VertexSet::new(n); n];
        for s in self.vertices() {
            // Ball expansion over bitsets: `reach` holds all vertices within
            // the current radius.
            let mut reach = self.closed_neighbor_set(s);
            let mut frontier = self.rows[s].clone();
            for _ in 1..k {
                let mut next = VertexSet::new(n);
                for v in frontier.iter() {
                    next.union_with(&self.rows[v]);
                }
                next.difference_with(&reach);
                if next.is_empty() {
                    break;
                }
                reach.union_with(&next);
                frontier = next;
            }
            reach.remove(s);
            rows[s] = reach;
        }
        Self::from_rows(rows)
    }

    pub fn square(&self) -> Self {
        self.kth_power(2)
    }

    /// Classes of the relation `N[u] = N[v]`, each sorted, ordered by least member.
    pub fn true_twin_classes(&self) -> Vec<Vec<Vertex>> {
        let mut by_closed: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
        for v in self.vertices() {
            let mut closed = self.adj[v].clone();
            let pos = closed.binary_search(&v).unwrap_err();
            closed.insert(pos, v);
            by_closed.entry(closed).or_default().push(v);
        }
        let mut classes: Vec<Vec<Vertex>> = by_closed.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        classes
    }

    pub fn is_simplicial(&self, v: Vertex) -> bool {
        let nbrs = &self.adj[v];
        nbrs.iter().enumerate().all(|(i, &a)| {
            nbrs[i + 1..].iter().all(|&b| self.rows[a].contains(b))
        })
    }

    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    pub fn is_acyclic(&self) -> bool {
        self.m + self.connected_components().len() == self.n()
    }

    /// Edge sets of the biconnected components (bridges are single-edge blocks).
    pub fn biconnected_components(&self) -> Vec<Vec<Edge>> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut blocks = Vec::new();
        let mut edge_stack: Vec<Edge> = Vec::new();
        for root in self.vertices() {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            // (vertex, parent, next neighbour index)
            let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let w = self.adj[v][*idx];
                    *idx += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(Edge::new(v, w));
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, v, 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(Edge::new(v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            let cut = Edge::new(parent, v);
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push(e);
                                if e == cut {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            blocks.push(block);
                        }
                    }
                }
            }
        }
        blocks
    }
}

/// All-pairs shortest-path lengths of one graph version.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    version: u64,
    n: usize,
    dist: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn get(&self, u: Vertex, v: Vertex) -> Distance {
        self.dist[u * self.n + v]
    }

    /// Whether this matrix was computed for exactly this graph value.
    pub fn is_for(&self, g: &Graph) -> bool {
        self.version == g.version()
    }

    pub fn diameter(&self) -> Distance {
        self.dist.iter().copied().max().unwrap_or(Distance::Finite(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bfs_power(g: &Graph, k: usize) -> Graph {
        let d = g.all_pairs_distances();
        let edges = g
            .vertices()
            .flat_map(|a| (a + 1..g.n()).map(move |b| (a, b)))
            .filter(|&(a, b)| d.get(a, b).at_most(k));
        Graph::from_edges(g.n(), edges).unwrap()
    }

    fn spider() -> Graph {
        // centre 0; legs 1-4, 2-5, 3-6
        Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn square_of_p3_is_k3() {
        assert_eq!(Graph::path(3).square(), Graph::complete(3));
    }

    #[test]
    fn square_of_c5_is_k5() {
        assert_eq!(Graph::cycle(5).square(), Graph::complete(5));
        assert_eq!(bfs_power(&Graph::cycle(5), 2), Graph::complete(5));
    }

    #[test]
    fn square_of_c7_is_circulant() {
        let sq = Graph::cycle(7).square();
        assert_eq!(sq.m(), 14);
        assert_eq!(sq, bfs_power(&Graph::cycle(7), 2));
        for i in 0..7 {
            assert!(sq.has_edge(i, (i + 2) % 7));
            assert!(!sq.has_edge(i, (i + 3) % 7));
        }
    }

    #[test]
    fn first_power_is_identity() {
        let g = spider();
        assert_eq!(g.kth_power(1), g);
    }

    #[test]
    fn distance_in_deleted_examples() {
        let star = Graph::star(3);
        assert_eq!(star.distance_in_deleted(0, 1, 2).unwrap(), Distance::Infinite);
        let k4 = Graph::complete(4);
        assert_eq!(k4.distance_in_deleted(2, 0, 3).unwrap(), Distance::Finite(1));
        let sq = spider().square();
        assert_eq!(sq.distance_in_deleted(0, 4, 5).unwrap(), Distance::Finite(3));
    }

    #[test]
    fn distance_in_deleted_rejects_the_deleted_vertex() {
        let g = Graph::path(3);
        assert_eq!(
            g.distance_in_deleted(1, 1, 2),
            Err(GraphError::DeletedVertexQuery { vertex: 1 })
        );
        assert!(g.distance_in_deleted(1, 0, 1).is_err());
    }

    #[test]
    fn twin_classes() {
        assert_eq!(Graph::complete(4).true_twin_classes(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(Graph::path(4).true_twin_classes().len(), 4);
        // false twins are not true twins
        assert_eq!(Graph::complete_bipartite(2, 3).true_twin_classes().len(), 5);
    }

    #[test]
    fn simplicial_examples() {
        assert!(Graph::complete(4).vertices().all(|v| Graph::complete(4).is_simplicial(v)));
        let c5 = Graph::cycle(5);
        assert!(c5.vertices().all(|v| !c5.is_simplicial(v)));
        let g = spider();
        assert!(g.is_simplicial(4));
        assert!(!g.is_simplicial(0));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop { vertex: 0 }));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn versions_change_on_mutation() {
        let g = Graph::cycle(4);
        let d = g.all_pairs_distances();
        assert!(d.is_for(&g));
        let h = g.without_edges([Edge::new(0, 1)]);
        assert!(!d.is_for(&h));
        assert_eq!(h.m(), 3);
    }

    #[test]
    fn blocks_of_a_bowtie_with_tail() {
        // two triangles sharing vertex 2, plus the bridge 4-5
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let mut blocks = g.biconnected_components();
        blocks.sort();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[0], vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        assert_eq!(blocks[1], vec![Edge::new(2, 3), Edge::new(2, 4), Edge::new(3, 4)]);
        assert_eq!(blocks[2], vec![Edge::new(4, 5)]);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::cycle(5);
        let h = g.induced_subgraph(&[0, 1, 2, 4]);
        assert_eq!(h.edge_vec(), vec![Edge::new(0, 1), Edge::new(0, 3), Edge::new(1, 2)]);
    }
}
