//! The reduction rules: twin deletion, red/blue labelling around hubs,
//! deletion of irrelevant square edges, and the width cutoff.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::WidthError;
use crate::families::{FamilyConfig, TwinRule, WidthCutoff};
use crate::graph::{Distance, Edge, Graph, Vertex};
use crate::width::{exact_width, WidthKind};

/// One twin deletion. Ids are those of the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinDeletion {
    pub vertex: Vertex,
    /// Lowest surviving member of the class.
    pub representative: Vertex,
    /// The class at deletion time, deleted vertex included.
    pub class: Vec<Vertex>,
    pub rule: TwinRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinReduction {
    pub graph: Graph,
    pub log: Vec<TwinDeletion>,
    /// `kept[i]` is the input id of reduced vertex `i`.
    pub kept: Vec<Vertex>,
}

/// Deletes the lowest member of a large enough twin class until none is
/// left. Classes are recomputed after every deletion.
pub fn reduce_twins(g: &Graph, fam: &FamilyConfig) -> TwinReduction {
    let mut graph = g.clone();
    let mut kept: Vec<Vertex> = g.vertices().collect();
    let mut log = Vec::new();
    loop {
        let class = graph.true_twin_classes().into_iter().find(|c| {
            c.len() >= fam.twin_threshold
                && c.len() >= 2
                && (fam.twin_rule == TwinRule::AllTwins || graph.is_simplicial(c[0]))
        });
        let Some(class) = class else { break };
        let victim = class[0];
        log.push(TwinDeletion {
            vertex: kept[victim],
            representative: kept[class[1]],
            class: class.iter().map(|&v| kept[v]).collect(),
            rule: fam.twin_rule,
        });
        let keep: Vec<Vertex> = graph.vertices().filter(|&v| v != victim).collect();
        graph = graph.induced_subgraph(&keep);
        kept.remove(victim);
    }
    TwinReduction { graph, log, kept }
}

/// Distances in `G - u` from every neighbour of `u`.
#[derive(Clone, Debug)]
pub struct HubDistances {
    pub hub: Vertex,
    pub neighbors: Vec<Vertex>,
    dist: Vec<Vec<Distance>>,
}

impl HubDistances {
    pub fn new(g: &Graph, u: Vertex) -> Self {
        let neighbors = g.neighbors(u).to_vec();
        let dist = neighbors.iter().map(|&x| g.bfs_without(x, u)).collect();
        HubDistances { hub: u, neighbors, dist }
    }

    /// `dist_{G-u}(neighbors[i], y)`.
    pub fn from_neighbor(&self, i: usize, y: Vertex) -> Distance {
        self.dist[i][y]
    }

    fn far(&self, i: usize, y: Vertex) -> bool {
        !self.from_neighbor(i, y).at_most(2)
    }
}

/// Lexicographically smallest set of `count` neighbours of `u` pairwise at
/// distance at least 3 in `G - u`.
pub fn find_spread_neighbors(g: &Graph, u: Vertex, count: usize) -> Option<Vec<Vertex>> {
    spread_from(&HubDistances::new(g, u), count)
}

fn spread_from(hd: &HubDistances, count: usize) -> Option<Vec<Vertex>> {
    let k = hd.neighbors.len();
    if k < count {
        return None;
    }
    if count == 0 {
        return Some(Vec::new());
    }
    // compatible[i][j]: neighbours i and j are far apart.
    let compatible: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && hd.far(i, hd.neighbors[j])).collect())
        .collect();
    let mut picked = Vec::with_capacity(count);
    if pick(&compatible, 0, count, &mut picked) {
        Some(picked.into_iter().map(|i| hd.neighbors[i]).collect())
    } else {
        None
    }
}

/// Include-first DFS in ascending order; the first hit is the
/// lexicographically smallest independent set of the conflict graph.
fn pick(compatible: &[Vec<bool>], from: usize, count: usize, picked: &mut Vec<usize>) -> bool {
    if picked.len() == count {
        return true;
    }
    let k = compatible.len();
    for i in from..k {
        if k - i < count - picked.len() {
            return false;
        }
        if picked.iter().all(|&p| compatible[p][i]) {
            picked.push(i);
            if pick(compatible, i + 1, count, picked) {
                return true;
            }
            picked.pop();
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoReason {
    LabelConflict { edge: Edge },
    MissingSquareEdge { edge: Edge, hub: Vertex },
    RedDeleted { edge: Edge },
    WidthExceeded { width: usize, cutoff: u64 },
}

impl NoReason {
    pub fn code(&self) -> &'static str {
        match self {
            NoReason::LabelConflict { .. } => "label-conflict",
            NoReason::MissingSquareEdge { .. } => "missing-square-edge",
            NoReason::RedDeleted { .. } => "red-deleted",
            NoReason::WidthExceeded { .. } => "width-exceeded",
        }
    }
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoReason::LabelConflict { edge } => write!(f, "edge {edge} is labelled both red and blue"),
            NoReason::MissingSquareEdge { edge, hub } => {
                write!(f, "red edges at hub {hub} force {edge}, which is missing")
            }
            NoReason::RedDeleted { edge } => write!(f, "red edge {edge} was marked irrelevant"),
            NoReason::WidthExceeded { width, cutoff } => {
                write!(f, "reduced graph has width {width} above the cutoff {cutoff}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Running,
    NoAnswer(NoReason),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Twins,
    Label,
    Delete,
    WidthCutoff,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Twins => "twins",
            Rule::Label => "label",
            Rule::Delete => "delete",
            Rule::WidthCutoff => "width-cutoff",
        }
    }
}

/// What the width check did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthCheck {
    /// The cutoff is at least the vertex count.
    Vacuous,
    Exact(usize),
    /// Too large for the exact routine; the greedy bound is recorded and the
    /// check passes.
    Undecided { upper_bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleStep {
    pub rule: Rule,
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    pub red: usize,
    pub blue: usize,
    pub deleted: usize,
    pub hubs: usize,
    pub width: Option<WidthCheck>,
}

/// A twin-reduced graph under labelling and edge deletion.
#[derive(Clone, Debug)]
pub struct LabeledInstance {
    /// The twin-reduced graph G; labels and hubs refer to it.
    pub base: Graph,
    /// G' = G - S.
    pub g: Graph,
    pub red: BTreeSet<Edge>,
    pub blue: BTreeSet<Edge>,
    pub hubs: Vec<Vertex>,
    /// Spread set chosen at each hub, parallel to `hubs`.
    pub spread: Vec<Vec<Vertex>>,
    pub deleted: BTreeSet<Edge>,
    pub twin_log: Vec<TwinDeletion>,
    pub kept: Vec<Vertex>,
    pub status: Status,
    pub trace: Vec<RuleStep>,
}

impl LabeledInstance {
    /// An instance with no labels, for a graph with no twin deletions.
    pub fn unlabeled(g: &Graph) -> Self {
        Self::from_twins(TwinReduction {
            graph: g.clone(),
            log: Vec::new(),
            kept: g.vertices().collect(),
        })
    }

    pub fn from_twins(t: TwinReduction) -> Self {
        LabeledInstance {
            base: t.graph.clone(),
            g: t.graph,
            red: BTreeSet::new(),
            blue: BTreeSet::new(),
            hubs: Vec::new(),
            spread: Vec::new(),
            deleted: BTreeSet::new(),
            twin_log: t.log,
            kept: t.kept,
            status: Status::Running,
            trace: Vec::new(),
        }
    }

    pub fn is_running(&self) -> bool {
        self.status == Status::Running
    }

    pub fn is_hub(&self, u: Vertex) -> bool {
        self.hubs.binary_search(&u).is_ok()
    }

    /// Some hub `u` with `xu, uy` both red.
    pub fn hub_witness(&self, x: Vertex, y: Vertex) -> Option<Vertex> {
        self.hubs
            .iter()
            .copied()
            .find(|&u| u != x && u != y && self.red.contains(&Edge::new(u, x)) && self.red.contains(&Edge::new(u, y)))
    }

    fn step(&mut self, rule: Rule, vertices_before: usize, edges_before: usize, width: Option<WidthCheck>) {
        self.trace.push(RuleStep {
            rule,
            vertices_before,
            vertices_after: self.g.n(),
            edges_before,
            edges_after: self.g.m(),
            red: self.red.len(),
            blue: self.blue.len(),
            deleted: self.deleted.len(),
            hubs: self.hubs.len(),
            width,
        });
    }

    /// The structural invariants of a running instance.
    pub fn check_invariants(&self) -> Result<(), &'static str> {
        if self.is_running() {
            if !self.red.is_disjoint(&self.blue) {
                return Err("red and blue overlap");
            }
            if !self.red.is_disjoint(&self.deleted) {
                return Err("a red edge was deleted");
            }
        }
        for &u in &self.hubs {
            for &x in self.base.neighbors(u) {
                let e = Edge::new(u, x);
                if !self.red.contains(&e) && !self.blue.contains(&e) {
                    return Err("hub edge left unlabelled");
                }
            }
        }
        for e in &self.deleted {
            if !self.base.contains_edge(*e) {
                return Err("deleted edge not in the graph");
            }
            if self.hub_witness(e.lo(), e.hi()).is_none() {
                return Err("deleted edge without a red hub witness");
            }
        }
        Ok(())
    }
}

/// Labels the edges around every vertex that has a spread set, scanning in
/// increasing id. Stops with a no-answer at the first red/blue clash.
pub fn label_edges(inst: &mut LabeledInstance, fam: &FamilyConfig) {
    let (vb, eb) = (inst.g.n(), inst.g.m());
    if inst.is_running() {
        let g = inst.base.clone();
        for u in g.vertices() {
            let hd = HubDistances::new(&g, u);
            let Some(spread) = spread_from(&hd, fam.spread_count) else { continue };
            let idx: Vec<usize> = spread
                .iter()
                .map(|v| hd.neighbors.iter().position(|w| w == v).expect("spread set is in N(u)"))
                .collect();
            inst.hubs.push(u);
            inst.spread.push(spread);
            for &x in &hd.neighbors {
                let e = Edge::new(u, x);
                if idx.iter().any(|&i| hd.far(i, x)) {
                    inst.blue.insert(e);
                } else {
                    inst.red.insert(e);
                }
            }
            if let Some(&edge) = inst.red.intersection(&inst.blue).next() {
                inst.status = Status::NoAnswer(NoReason::LabelConflict { edge });
                break;
            }
        }
    }
    inst.step(Rule::Label, vb, eb, None);
}

/// For each hub and each pair of red neighbours `x, y`: the edge `xy` must
/// exist, and it is deleted unless some blue neighbour of the hub sees both.
pub fn delete_irrelevant_edges(inst: &mut LabeledInstance) {
    let (vb, eb) = (inst.g.n(), inst.g.m());
    if inst.is_running() {
        let g = &inst.base;
        let mut s = BTreeSet::new();
        let mut outcome = Status::Running;
        'hubs: for &u in &inst.hubs {
            let reds: Vec<Vertex> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&x| inst.red.contains(&Edge::new(u, x)))
                .collect();
            let blues: Vec<Vertex> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&v| inst.blue.contains(&Edge::new(u, v)))
                .collect();
            for (i, &x) in reds.iter().enumerate() {
                for &y in &reds[i + 1..] {
                    let xy = Edge::new(x, y);
                    if !g.has_edge(x, y) {
                        outcome = Status::NoAnswer(NoReason::MissingSquareEdge { edge: xy, hub: u });
                        break 'hubs;
                    }
                    if !blues.iter().any(|&v| g.has_edge(v, x) && g.has_edge(v, y)) {
                        s.insert(xy);
                        if inst.red.contains(&xy) {
                            outcome = Status::NoAnswer(NoReason::RedDeleted { edge: xy });
                            break 'hubs;
                        }
                    }
                }
            }
        }
        inst.g = inst.base.without_edges(s.iter().copied());
        inst.deleted = s;
        inst.status = outcome;
    }
    inst.step(Rule::Delete, vb, eb, None);
}

/// Refuses when the relevant width of G' is above the family cutoff.
pub fn width_cutoff_check(inst: &mut LabeledInstance, fam: &FamilyConfig) {
    width_cutoff_check_with(inst, fam.width_kind, fam.width_cutoff);
}

pub fn width_cutoff_check_with(inst: &mut LabeledInstance, kind: WidthKind, cutoff: WidthCutoff) {
    let (vb, eb) = (inst.g.n(), inst.g.m());
    let mut check = None;
    if inst.is_running() {
        let c = if cutoff.vacuous_for(inst.g.n()) {
            WidthCheck::Vacuous
        } else {
            match exact_width(&inst.g, kind) {
                Ok((w, _)) => WidthCheck::Exact(w),
                Err(WidthError::CapExceeded { upper_bound, .. }) => WidthCheck::Undecided { upper_bound },
            }
        };
        if let (WidthCheck::Exact(width), WidthCutoff::AtMost(limit)) = (c, cutoff) {
            if cutoff.exceeded_by(width) {
                inst.status = Status::NoAnswer(NoReason::WidthExceeded { width, cutoff: limit });
            }
        }
        check = Some(c);
    }
    inst.step(Rule::WidthCutoff, vb, eb, check);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceOptions {
    pub twins: bool,
    pub labels: bool,
    pub delete_edges: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { twins: true, labels: true, delete_edges: true }
    }
}

/// All rules once, in order: twins, labels, deletions, cutoff.
pub fn reduce(g: &Graph, fam: &FamilyConfig) -> LabeledInstance {
    reduce_with(g, fam, ReduceOptions::default())
}

pub fn reduce_with(g: &Graph, fam: &FamilyConfig, opts: ReduceOptions) -> LabeledInstance {
    let twins = if opts.twins {
        reduce_twins(g, fam)
    } else {
        TwinReduction { graph: g.clone(), log: Vec::new(), kept: g.vertices().collect() }
    };
    let mut inst = LabeledInstance::from_twins(twins);
    inst.step(Rule::Twins, g.n(), g.m(), None);
    if opts.labels {
        label_edges(&mut inst, fam);
    }
    if opts.labels && opts.delete_edges {
        delete_irrelevant_edges(&mut inst);
    }
    width_cutoff_check(&mut inst, fam);
    inst
}

/// `ux` appears in no square root of `g` when some neighbour `y` of `u` is
/// at distance at least 3 from `x` in `G - u`.
pub fn excluded_by_distance(g: &Graph, u: Vertex, x: Vertex) -> bool {
    let from_x = g.bfs_without(x, u);
    g.neighbors(u).iter().any(|&y| y != x && !from_x[y].at_most(2))
}

/// Every edge ruled out by [`excluded_by_distance`].
pub fn distance_excluded_edges(g: &Graph) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for u in g.vertices() {
        for &x in g.neighbors(u) {
            if excluded_by_distance(g, u, x) {
                out.insert(Edge::new(u, x));
            }
        }
    }
    out
}

/// Edge sets for error messages and traces.
pub fn sorted_edges(set: &BTreeSet<Edge>) -> Vec<Edge> {
    set.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyKind;
    use alloc::vec;

    pub(crate) fn spider_square() -> Graph {
        Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])
            .unwrap()
            .square()
    }

    fn set(pairs: &[(usize, usize)]) -> BTreeSet<Edge> {
        pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
    }

    #[test]
    fn k9_outerplanar_stops_at_seven() {
        let t = reduce_twins(&Graph::complete(9), &FamilyConfig::outerplanar());
        assert_eq!(t.graph, Graph::complete(7));
        assert_eq!(t.log.len(), 2);
        assert_eq!(t.log[0].vertex, 0);
        assert_eq!(t.log[0].class.len(), 9);
        assert_eq!(t.log[1].vertex, 1);
        assert_eq!(t.log[1].representative, 2);
        assert_eq!(t.kept, [2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn twins_untouched_below_threshold() {
        let t = reduce_twins(&Graph::path(5), &FamilyConfig::pw2());
        assert!(t.log.is_empty());
        assert_eq!(t.graph, Graph::path(5));
        let mut f = FamilyConfig::pw2();
        f.twin_threshold = 3;
        let t = reduce_twins(&Graph::complete(4), &f);
        assert_eq!(t.graph, Graph::complete(2));
        assert_eq!(t.log.len(), 2);
    }

    #[test]
    fn spread_examples() {
        assert_eq!(find_spread_neighbors(&Graph::star(3), 0, 3), Some(vec![1, 2, 3]));
        assert_eq!(find_spread_neighbors(&Graph::complete(4), 0, 3), None);
        assert_eq!(find_spread_neighbors(&spider_square(), 0, 3), Some(vec![4, 5, 6]));
        assert_eq!(find_spread_neighbors(&spider_square(), 0, 5), None);
    }

    #[test]
    fn spider_labels_and_deletions() {
        let inst = reduce(&spider_square(), &FamilyConfig::outerplanar());
        assert_eq!(inst.status, Status::Running);
        assert_eq!(inst.hubs, [0]);
        assert_eq!(inst.red, set(&[(0, 1), (0, 2), (0, 3)]));
        assert_eq!(inst.blue, set(&[(0, 4), (0, 5), (0, 6)]));
        assert_eq!(inst.deleted, set(&[(1, 2), (1, 3), (2, 3)]));
        assert_eq!(inst.g.m(), 9);
        assert_eq!(inst.trace.last().unwrap().width, Some(WidthCheck::Vacuous));
        inst.check_invariants().unwrap();
        let (w, _) = exact_width(&inst.g, WidthKind::Tree).unwrap();
        assert_eq!(w, 2);
    }

    #[test]
    fn claw_is_all_blue() {
        let inst = reduce(&Graph::star(3), &FamilyConfig::outerplanar());
        assert_eq!(inst.hubs, [0]);
        assert!(inst.red.is_empty());
        assert_eq!(inst.blue.len(), 3);
        assert!(inst.deleted.is_empty());
    }

    #[test]
    fn c6_has_no_hubs() {
        let inst = reduce(&Graph::cycle(6), &FamilyConfig::outerplanar());
        assert!(inst.hubs.is_empty() && inst.red.is_empty() && inst.blue.is_empty());
        assert_eq!(inst.g, Graph::cycle(6));
    }

    #[test]
    fn missing_square_edge_is_refused() {
        let mut inst = LabeledInstance::unlabeled(&Graph::path(3));
        inst.hubs = vec![1];
        inst.red = set(&[(0, 1), (1, 2)]);
        delete_irrelevant_edges(&mut inst);
        assert_eq!(
            inst.status,
            Status::NoAnswer(NoReason::MissingSquareEdge { edge: Edge::new(0, 2), hub: 1 })
        );
    }

    #[test]
    fn lowered_cutoff_fires() {
        let mut inst = LabeledInstance::unlabeled(&Graph::cycle(4));
        width_cutoff_check_with(&mut inst, WidthKind::Tree, WidthCutoff::AtMost(1));
        assert_eq!(inst.status, Status::NoAnswer(NoReason::WidthExceeded { width: 2, cutoff: 1 }));
        let mut inst = LabeledInstance::unlabeled(&Graph::cycle(4));
        width_cutoff_check_with(&mut inst, WidthKind::Tree, WidthCutoff::Unlimited);
        assert!(inst.is_running());
    }

    #[test]
    fn pw2_spread_is_five() {
        let inst = reduce(&spider_square(), &FamilyConfig::new(FamilyKind::Pw2));
        assert!(inst.hubs.is_empty());
        assert!(inst.deleted.is_empty());
    }

    #[test]
    fn distance_exclusion_on_spider() {
        let ex = distance_excluded_edges(&spider_square());
        assert!(ex.contains(&Edge::new(0, 4)));
        assert!(!ex.contains(&Edge::new(0, 1)));
    }
}
