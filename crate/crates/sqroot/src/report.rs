//! JSON shapes for `solve` and `reduce --trace`. All vertex ids are those of
//! the input graph.

use serde::{Deserialize, Serialize};

use sqroot_core::reduction::{LabeledInstance, RuleStep, Status, WidthCheck};
use sqroot_core::search::ComponentReport;
use sqroot_core::{Edge, SolveOutcome};

pub type Pair = [usize; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub answer: String,
    pub root_edges: Option<Vec<Pair>>,
    pub family: String,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<ReasonReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes_expanded: u64,
    pub rule_trace: Vec<ComponentTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReasonReport {
    pub code: String,
    pub detail: String,
}

/// The reduction run on one connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentTrace {
    pub vertices: Vec<usize>,
    pub answer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fallback: Option<bool>,
    pub steps: Vec<StepReport>,
    pub red: Vec<Pair>,
    pub blue: Vec<Pair>,
    pub deleted: Vec<Pair>,
    pub hubs: Vec<usize>,
    pub spread: Vec<Vec<usize>>,
    pub twin_log: Vec<TwinReport>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub rule: String,
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    pub red: usize,
    pub blue: usize,
    pub deleted: usize,
    pub hubs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinReport {
    pub vertex: usize,
    pub representative: usize,
    pub class: Vec<usize>,
}

fn pair(e: &Edge) -> Pair {
    [e.lo(), e.hi()]
}

fn step(s: &RuleStep) -> StepReport {
    StepReport {
        rule: s.rule.name().to_string(),
        vertices_before: s.vertices_before,
        vertices_after: s.vertices_after,
        edges_before: s.edges_before,
        edges_after: s.edges_after,
        red: s.red,
        blue: s.blue,
        deleted: s.deleted,
        hubs: s.hubs,
        width: s.width.map(|w| match w {
            WidthCheck::Vacuous => "vacuous".to_string(),
            WidthCheck::Exact(w) => format!("exact {w}"),
            WidthCheck::Undecided { upper_bound } => format!("undecided, at most {upper_bound}"),
        }),
    }
}

/// Trace of `inst`, which was built on the component `comp` of the input.
/// `inst.base` ids go through `inst.kept` and then `comp`.
pub fn component_trace(comp: &[usize], inst: &LabeledInstance, answer: &str, fallback: Option<bool>) -> ComponentTrace {
    let up = |x: usize| comp[inst.kept[x]];
    let edges = |set: &mut dyn Iterator<Item = &Edge>| {
        let mut v: Vec<Pair> = set
            .map(|e| {
                let (a, b) = (up(e.lo()), up(e.hi()));
                [a.min(b), a.max(b)]
            })
            .collect();
        v.sort();
        v
    };
    ComponentTrace {
        vertices: comp.to_vec(),
        answer: answer.to_string(),
        fallback,
        steps: inst.trace.iter().map(step).collect(),
        red: edges(&mut inst.red.iter()),
        blue: edges(&mut inst.blue.iter()),
        deleted: edges(&mut inst.deleted.iter()),
        hubs: inst.hubs.iter().map(|&h| up(h)).collect(),
        spread: inst.spread.iter().map(|s| s.iter().map(|&x| up(x)).collect()).collect(),
        // Twin log entries already use component ids.
        twin_log: inst
            .twin_log
            .iter()
            .map(|t| TwinReport {
                vertex: comp[t.vertex],
                representative: comp[t.representative],
                class: t.class.iter().map(|&x| comp[x]).collect(),
            })
            .collect(),
        status: match &inst.status {
            Status::Running => "running".to_string(),
            Status::NoAnswer(r) => format!("no-answer: {}", r.code()),
        },
    }
}

fn component(c: &ComponentReport) -> ComponentTrace {
    component_trace(&c.vertices, &c.instance, c.answer.name(), Some(c.fallback))
}

pub fn solve_report(out: &SolveOutcome, family: &str) -> SolveReport {
    SolveReport {
        answer: out.answer.name().to_string(),
        root_edges: out.root.as_ref().map(|r| r.iter().map(pair).collect()),
        family: family.to_string(),
        stats: Stats {
            nodes_expanded: out.nodes_expanded(),
            rule_trace: out.components.iter().map(component).collect(),
        },
        reason: out.reason.as_ref().map(|r| ReasonReport {
            code: r.code().to_string(),
            detail: r.to_string(),
        }),
    }
}

/// `reduce --trace` output: one entry per component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub family: String,
    pub components: Vec<ComponentTrace>,
}
