//! Minor containment for small fixed patterns.
//!
//! The general route is a branch-set search: every vertex of the host graph
//! is assigned to one branch set or left out, and partial assignments are
//! pruned as soon as a branch set can no longer become connected or a pattern
//! edge can no longer be realised. `K4` and `K_{2,3}` additionally have exact
//! polynomial routes (series-parallel reduction and three disjoint paths).
//! Both routes are kept; the tests run them against each other.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex, VertexSet};

/// Largest pattern the branch-set search accepts.
pub const PATTERN_CAP: usize = 6;

pub fn k4() -> Graph {
    Graph::complete(4)
}

pub fn k23() -> Graph {
    Graph::complete_bipartite(2, 3)
}

/// Whether `g` contains `pattern` as a minor.
pub fn has_minor(g: &Graph, pattern: &Graph) -> Result<bool, GraphError> {
    check_pattern(pattern)?;
    if is_isomorphic_small(pattern, &k4()) {
        return Ok(has_k4_minor(g));
    }
    if is_isomorphic_small(pattern, &k23()) {
        return Ok(has_k23_minor(g));
    }
    Ok(model_search(g, pattern))
}

/// Branch-set search only, with no pattern-specific shortcut.
pub fn has_minor_by_model_search(g: &Graph, pattern: &Graph) -> Result<bool, GraphError> {
    check_pattern(pattern)?;
    Ok(model_search(g, pattern))
}

fn check_pattern(pattern: &Graph) -> Result<(), GraphError> {
    if pattern.n() > PATTERN_CAP {
        return Err(GraphError::PatternTooLarge {
            size: pattern.n(),
            cap: PATTERN_CAP,
        });
    }
    Ok(())
}

/// Brute-force isomorphism over all permutations; patterns only.
pub(crate) fn is_isomorphic_small(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut perm: Vec<Vertex> = (0..a.n()).collect();
    let mut used = vec![false; a.n()];
    fn extend(a: &Graph, b: &Graph, perm: &mut Vec<Vertex>, used: &mut [bool], i: usize) -> bool {
        if i == a.n() {
            return true;
        }
        for t in 0..b.n() {
            if used[t] || a.degree(i) != b.degree(t) {
                continue;
            }
            let consistent = (0..i).all(|j| a.has_edge(i, j) == b.has_edge(t, perm[j]));
            if consistent {
                used[t] = true;
                perm[i] = t;
                if extend(a, b, perm, used, i + 1) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }
    extend(a, b, &mut perm, &mut used, 0)
}

/// `K4`-minor test by series-parallel reduction: drop vertices of degree at
/// most one and suppress degree-two vertices (joining their neighbours). The
/// graph is `K4`-minor-free exactly when this empties it.
pub fn has_k4_minor(g: &Graph) -> bool {
    let n = g.n();
    let mut rows: Vec<VertexSet> = g.vertices().map(|v| g.neighbor_set(v).clone()).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<Vertex> = g.vertices().collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        let deg = rows[v].len();
        if deg > 2 {
            continue;
        }
        alive[v] = false;
        let nbrs = rows[v].to_vec();
        for &w in &nbrs {
            rows[w].remove(v);
        }
        if let [a, b] = nbrs[..] {
            rows[a].insert(b);
            rows[b].insert(a);
        }
        stack.extend(nbrs);
    }
    alive.iter().any(|&a| a)
}

/// `K_{2,3}` has maximum degree three, so it is a minor exactly when it is a
/// topological minor: two vertices joined by three internally disjoint paths
/// of length at least two.
pub fn has_k23_minor(g: &Graph) -> bool {
    if g.n() < 5 || g.m() < 6 {
        return false;
    }
    for a in g.vertices() {
        if g.degree(a) < 3 {
            continue;
        }
        for b in a + 1..g.n() {
            if g.degree(b) >= 3 && disjoint_paths_at_least(g, a, b, 3) {
                return true;
            }
        }
    }
    false
}

/// Whether `g - ab` has `want` internally vertex-disjoint `a`-`b` paths.
/// Unit-capacity max flow on the vertex-split network.
fn disjoint_paths_at_least(g: &Graph, a: Vertex, b: Vertex, want: usize) -> bool {
    let n = g.n();
    // node 2v = v_in, 2v+1 = v_out; arcs stored with residual capacities.
    let mut head: Vec<usize> = Vec::new();
    let mut cap: Vec<u8> = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut add_arc = |from: usize, to: usize, c: u8, head: &mut Vec<usize>, cap: &mut Vec<u8>| {
        out[from].push(head.len());
        head.push(to);
        cap.push(c);
        out[to].push(head.len());
        head.push(from);
        cap.push(0);
    };
    for v in g.vertices() {
        let c = if v == a || v == b { want as u8 } else { 1 };
        add_arc(2 * v, 2 * v + 1, c, &mut head, &mut cap);
        for &w in g.neighbors(v) {
            if (v == a && w == b) || (v == b && w == a) {
                continue;
            }
            add_arc(2 * v + 1, 2 * w, 1, &mut head, &mut cap);
        }
    }
    let source = 2 * a + 1;
    let sink = 2 * b;
    let mut flow = 0;
    while flow < want {
        let mut via = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; 2 * n];
        seen[source] = true;
        let mut queue = alloc::collections::VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &arc in &out[x] {
                let y = head[arc];
                if cap[arc] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = arc;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut x = sink;
        while x != source {
            let arc = via[x];
            cap[arc] -= 1;
            cap[arc ^ 1] += 1;
            x = head[arc ^ 1];
        }
        flow += 1;
    }
    true
}

fn model_search(g: &Graph, pattern: &Graph) -> bool {
    let k = pattern.n();
    if k == 0 {
        return true;
    }
    if k > g.n() || pattern.m() > g.m() {
        return false;
    }
    let min_pattern_degree = pattern.vertices().map(|v| pattern.degree(v)).min().unwrap_or(0);
    let host = if min_pattern_degree >= 2 {
        strip_low_degree(g)
    } else {
        g.clone()
    };
    let biconnected_pattern =
        k >= 3 && pattern.is_connected() && pattern.biconnected_components().len() == 1;
    if biconnected_pattern {
        // A 2-connected minor lives inside a single block.
        host.biconnected_components().into_iter().any(|block| {
            if block.len() < pattern.m() {
                return false;
            }
            let mut verts: Vec<Vertex> = block.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
            verts.sort_unstable();
            verts.dedup();
            if verts.len() < k {
                return false;
            }
            let mut index = vec![usize::MAX; host.n()];
            for (i, &v) in verts.iter().enumerate() {
                index[v] = i;
            }
            let sub = Graph::from_edges(verts.len(), block.iter().map(|e| (index[e.lo()], index[e.hi()])))
                .expect("block edges are simple");
            BranchSets::new(&sub, pattern).run()
        })
    } else {
        BranchSets::new(&host, pattern).run()
    }
}

/// Repeatedly removes vertices of degree at most one. Safe when every pattern
/// vertex has degree at least two.
fn strip_low_degree(g: &Graph) -> Graph {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut stack: Vec<Vertex> = g.vertices().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let keep: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    g.induced_subgraph(&keep)
}

struct BranchSets<'a> {
    g: &'a Graph,
    pattern_edges: Vec<(usize, usize)>,
    k: usize,
    order: Vec<Vertex>,
    owner: Vec<Option<usize>>,
    /// Pattern vertices ordered most-constrained (highest degree) first.
    labels: Vec<usize>,
}

impl<'a> BranchSets<'a> {
    fn new(g: &'a Graph, pattern: &Graph) -> Self {
        let k = pattern.n();
        let mut labels: Vec<usize> = (0..k).collect();
        labels.sort_by_key(|&p| core::cmp::Reverse(pattern.degree(p)));
        // Visit host vertices in BFS order from a highest-degree vertex so
        // that branch sets tend to grow contiguously.
        let mut order = Vec::with_capacity(g.n());
        let mut seen = vec![false; g.n()];
        let mut starts: Vec<Vertex> = g.vertices().collect();
        starts.sort_by_key(|&v| core::cmp::Reverse(g.degree(v)));
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = alloc::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &y in g.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        BranchSets {
            g,
            pattern_edges: pattern.edges().map(|e| e.endpoints()).collect(),
            k,
            order,
            owner: vec![None; g.n()],
            labels,
        }
    }

    fn run(mut self) -> bool {
        self.dfs(0)
    }

    fn dfs(&mut self, idx: usize) -> bool {
        if !self.feasible(idx) {
            return false;
        }
        if idx == self.order.len() {
            // feasible() with an empty future is the full model check.
            return true;
        }
        let v = self.order[idx];
        for li in 0..self.k {
            let label = self.labels[li];
            self.owner[v] = Some(label);
            if self.dfs(idx + 1) {
                return true;
            }
        }
        self.owner[v] = None;
        self.dfs(idx + 1)
    }

    /// Can the partial assignment (vertices `order[..idx]` decided) still be
    /// completed using only the undecided vertices `order[idx..]`?
    fn feasible(&self, idx: usize) -> bool {
        let n = self.g.n();
        let mut future = VertexSet::new(n);
        for &v in &self.order[idx..] {
            future.insert(v);
        }
        let mut members: Vec<VertexSet> = vec![VertexSet::new(n); self.k];
        for &v in &self.order[..idx] {
            if let Some(l) = self.owner[v] {
                members[l].insert(v);
            }
        }
        let empty = members.iter().filter(|s| s.is_empty()).count();
        if empty > self.order.len() - idx {
            return false;
        }
        // reach[l]: vertices reachable from the branch set through the future.
        let mut reach: Vec<VertexSet> = Vec::with_capacity(self.k);
        for set in &members {
            if set.is_empty() {
                reach.push(future.clone());
                continue;
            }
            let start = set.iter().next().expect("non-empty");
            let mut allowed = future.clone();
            allowed.union_with(set);
            let mut comp = VertexSet::new(n);
            comp.insert(start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in self.g.neighbors(x) {
                    if allowed.contains(y) && !comp.contains(y) {
                        comp.insert(y);
                        stack.push(y);
                    }
                }
            }
            if !set.is_subset(&comp) {
                return false;
            }
            reach.push(comp);
        }
        for &(a, b) in &self.pattern_edges {
            let touches = reach[a].iter().any(|x| {
                self.g
                    .neighbors(x)
                    .iter()
                    .any(|&y| reach[b].contains(y) && (x != y))
            });
            if !touches {
                return false;
            }
        }
        if idx == self.order.len() {
            // Complete: all sets non-empty and connected (checked above), and
            // each pattern edge realised by a host edge between the two sets.
            if empty > 0 {
                return false;
            }
            return self.pattern_edges.iter().all(|&(a, b)| {
                members[a]
                    .iter()
                    .any(|x| self.g.neighbors(x).iter().any(|&y| members[b].contains(y)))
            });
        }
        true
    }
}
