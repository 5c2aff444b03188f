//! Brute-force square roots: the ground truth every other stage is checked
//! against.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::error::OracleError;
use crate::families::{FamilyConfig, FamilyKind};
use crate::graph::{Edge, Graph, Vertex};

pub const DEFAULT_EDGE_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootWitness {
    pub edges: Vec<Edge>,
    pub minimal: bool,
    pub family_tags: Vec<FamilyKind>,
}

impl RootWitness {
    pub fn graph(&self, n: usize) -> Graph {
        Graph::from_edge_set(n, self.edges.iter().copied()).expect("root edges are simple")
    }
}

pub fn is_square_root(h: &Graph, g: &Graph) -> Result<bool, OracleError> {
    if h.n() != g.n() {
        return Err(OracleError::VertexCountMismatch { root: h.n(), graph: g.n() });
    }
    Ok(&h.square() == g)
}

/// Every single-edge deletion breaks the square.
pub fn is_minimal_root(h: &Graph, g: &Graph) -> Result<bool, OracleError> {
    if !is_square_root(h, g)? {
        return Err(OracleError::NotASquareRoot);
    }
    Ok(h.edges().all(|e| h.without_edges([e]).square() != *g))
}

/// Visits every square root of `g` (inside `fam` when given) in the
/// deterministic order of an exclude-first DFS over the lexicographically
/// sorted edges of `g`.
pub fn for_each_root(
    g: &Graph,
    fam: Option<&FamilyConfig>,
    cap: usize,
    mut visit: impl FnMut(&[Edge]) -> ControlFlow<()>,
) -> Result<(), OracleError> {
    if g.m() > cap {
        return Err(OracleError::CapExceeded { m: g.m(), cap });
    }
    // Isolated vertices carry no edges in any root; drop them.
    let active: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) > 0).collect();
    if active.len() > 64 {
        return Err(OracleError::CapExceeded { m: g.m(), cap });
    }
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in active.iter().enumerate() {
        local[v] = i;
    }
    let k = active.len();
    let mut gadj = vec![0u64; k];
    let mut edges = Vec::with_capacity(g.m());
    for e in g.edges() {
        let (a, b) = (local[e.lo()], local[e.hi()]);
        gadj[a] |= 1 << b;
        gadj[b] |= 1 << a;
        edges.push((a, b));
    }
    let mut dfs = RootDfs {
        gadj,
        edges,
        inc: vec![0; k],
        poss: vec![0; k],
        fam,
        active,
        n: g.n(),
        chosen: Vec::new(),
    };
    for &(a, b) in &dfs.edges {
        dfs.poss[a] |= 1 << b;
        dfs.poss[b] |= 1 << a;
    }
    let _ = dfs.go(0, &mut visit);
    Ok(())
}

struct RootDfs<'f> {
    gadj: Vec<u64>,
    edges: Vec<(usize, usize)>,
    inc: Vec<u64>,
    /// Included or still undecided.
    poss: Vec<u64>,
    fam: Option<&'f FamilyConfig>,
    active: Vec<Vertex>,
    n: usize,
    chosen: Vec<usize>,
}

impl RootDfs<'_> {
    fn go(
        &mut self,
        i: usize,
        visit: &mut impl FnMut(&[Edge]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.edges.len() {
            let root: Vec<Edge> = self
                .chosen
                .iter()
                .map(|&j| {
                    let (a, b) = self.edges[j];
                    Edge::new(self.active[a], self.active[b])
                })
                .collect();
            if let Some(f) = self.fam {
                let h = Graph::from_edge_set(self.n, root.iter().copied()).expect("simple");
                if !f.is_member(&h) {
                    return ControlFlow::Continue(());
                }
            }
            return visit(&root);
        }
        let (a, b) = self.edges[i];

        // Exclude.
        self.poss[a] &= !(1 << b);
        self.poss[b] &= !(1 << a);
        if self.coverable_after_exclusion(a, b) {
            self.go(i + 1, visit)?;
        }
        self.poss[a] |= 1 << b;
        self.poss[b] |= 1 << a;

        // Include: every new 2-path must close in g.
        let open_a = self.inc[a] & !self.gadj[b] & !(1 << b);
        let open_b = self.inc[b] & !self.gadj[a] & !(1 << a);
        if open_a == 0 && open_b == 0 {
            self.inc[a] |= 1 << b;
            self.inc[b] |= 1 << a;
            self.chosen.push(i);
            if self.family_allows(a, b) {
                self.go(i + 1, visit)?;
            }
            self.chosen.pop();
            self.inc[a] &= !(1 << b);
            self.inc[b] &= !(1 << a);
        }
        ControlFlow::Continue(())
    }

    fn covered(&self, x: usize, y: usize) -> bool {
        self.poss[x] & (1 << y) != 0 || self.poss[x] & self.poss[y] != 0
    }

    /// After losing `ab`, the edge itself and every g-edge that could have
    /// used `ab` as half of a 2-path must keep some option.
    fn coverable_after_exclusion(&self, a: usize, b: usize) -> bool {
        if !self.covered(a, b) {
            return false;
        }
        for (p, q) in [(a, b), (b, a)] {
            let mut rest = self.gadj[p] & !(1 << q);
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if !self.covered(p, y) {
                    return false;
                }
            }
        }
        true
    }

    fn family_allows(&self, a: usize, b: usize) -> bool {
        let Some(f) = self.fam else { return true };
        if let Some(d) = f.max_degree {
            if self.inc[a].count_ones() as usize > d || self.inc[b].count_ones() as usize > d {
                return false;
            }
        }
        // The component of the new edge, found through included edges.
        let mut comp = (1u64 << a) | (1u64 << b);
        let mut frontier = comp;
        let mut closes_cycle = false;
        {
            // Detect whether a and b were already connected without ab.
            let mut seen = 1u64 << a;
            let mut front = seen;
            while front != 0 {
                let x = front.trailing_zeros() as usize;
                front &= front - 1;
                let mut nb = self.inc[x];
                if x == a {
                    nb &= !(1 << b);
                }
                if x == b {
                    nb &= !(1 << a);
                }
                let new = nb & !seen;
                seen |= new;
                front |= new;
            }
            if seen & (1 << b) != 0 {
                closes_cycle = true;
            }
        }
        let tree_safe = matches!(
            f.kind,
            FamilyKind::Outerplanar | FamilyKind::Forest | FamilyKind::Cactus
        );
        if tree_safe && !closes_cycle {
            return true;
        }
        if f.kind == FamilyKind::Forest {
            return false;
        }
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.inc[x] & !comp;
            comp |= new;
            frontier |= new;
        }
        let mut ids = Vec::new();
        let mut rest = comp;
        while rest != 0 {
            ids.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        let mut pairs = Vec::new();
        for (i, &x) in ids.iter().enumerate() {
            for (j, &y) in ids.iter().enumerate().skip(i + 1) {
                if self.inc[x] & (1 << y) != 0 {
                    pairs.push((i, j));
                }
            }
        }
        let h = Graph::from_edges(ids.len(), pairs).expect("simple");
        f.kind.contains(&h)
    }
}

/// All minimal square roots of `g`, restricted to `fam` when given, sorted.
pub fn enumerate_minimal_roots(
    g: &Graph,
    fam: Option<&FamilyConfig>,
) -> Result<Vec<RootWitness>, OracleError> {
    enumerate_minimal_roots_capped(g, fam, DEFAULT_EDGE_CAP)
}

pub fn enumerate_minimal_roots_capped(
    g: &Graph,
    fam: Option<&FamilyConfig>,
    cap: usize,
) -> Result<Vec<RootWitness>, OracleError> {
    let mut out = Vec::new();
    for_each_root(g, fam, cap, |root| {
        let h = Graph::from_edge_set(g.n(), root.iter().copied()).expect("simple");
        if h.edges().all(|e| h.without_edges([e]).square() != *g) {
            let family_tags = FamilyKind::ALL
                .into_iter()
                .filter(|k| k.contains(&h))
                .collect();
            out.push(RootWitness {
                edges: root.to_vec(),
                minimal: true,
                family_tags,
            });
        }
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

/// Any root in the family. Subgraph closure makes this the same as asking
/// for a minimal one.
pub fn has_family_root_bruteforce(g: &Graph, fam: &FamilyConfig) -> Result<bool, OracleError> {
    has_family_root_capped(g, fam, DEFAULT_EDGE_CAP)
}

pub fn has_family_root_capped(g: &Graph, fam: &FamilyConfig, cap: usize) -> Result<bool, OracleError> {
    Ok(find_family_root(g, fam, cap)?.is_some())
}

pub fn find_family_root(
    g: &Graph,
    fam: &FamilyConfig,
    cap: usize,
) -> Result<Option<Vec<Edge>>, OracleError> {
    let mut found = None;
    for_each_root(g, Some(fam), cap, |root| {
        found = Some(root.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Counts roots without any family restriction.
pub fn count_roots(g: &Graph, cap: usize) -> Result<usize, OracleError> {
    let mut count = 0;
    for_each_root(g, None, cap, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}
