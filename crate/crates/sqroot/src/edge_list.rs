//! The edge-list text format: a header `n m`, then `m` lines `u v`.
//! `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use sqroot_core::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty input: expected a header line `n m`")]
    MissingHeader,
    #[error("line {line}: malformed header, expected `n m`")]
    BadHeader { line: usize },
    #[error("line {line}: expected two vertex ids")]
    BadEdge { line: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("header declares {declared} edges, body has {found}")]
    CountMismatch { declared: usize, found: usize },
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn two<T: std::str::FromStr>(line: &str) -> Option<(T, T)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m): (usize, usize) = two(header).ok_or(ParseError::BadHeader { line: hline })?;
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let (u, v): (usize, usize) = two(body).ok_or(ParseError::BadEdge { line })?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::OutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        let e = Edge::new(u, v);
        if !seen.insert(e) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(ParseError::CountMismatch { declared: m, found: edges.len() });
    }
    Ok(Graph::from_edge_set(n, edges).expect("checked above"))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.lo(), e.hi());
    }
    out
}

/// A graph read with arbitrary vertex names; `labels[i]` names vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeled {
    pub graph: Graph,
    pub labels: Vec<String>,
}

/// Header-free variant: each line is `a b` (an edge) or `a` (a vertex), with
/// any whitespace-free tokens as names. Ids follow first appearance.
pub fn parse_labeled_edge_list(text: &str) -> Result<Labeled, ParseError> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut id_of = |name: &str| {
        *ids.entry(name.to_string()).or_insert_with(|| {
            labels.push(name.to_string());
            labels.len() - 1
        })
    };
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for (line, body) in content_lines(text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens.as_slice() {
            [a] => {
                id_of(a);
            }
            [a, b] => {
                let (u, v) = (id_of(a), id_of(b));
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                if !seen.insert(Edge::new(u, v)) {
                    return Err(ParseError::DuplicateEdge { line, u, v });
                }
                edges.push(Edge::new(u, v));
            }
            _ => return Err(ParseError::BadEdge { line }),
        }
    }
    let graph = Graph::from_edge_set(labels.len(), edges).expect("checked above");
    Ok(Labeled { graph, labels })
}

/// Graphviz rendering; `highlight` edges are drawn bold.
pub fn to_dot(g: &Graph, highlight: &[Edge], labels: Option<&[String]>) -> String {
    let name = |v: usize| match labels {
        Some(l) => format!("\"{}\"", l[v].replace('"', "\\\"")),
        None => v.to_string(),
    };
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", name(v));
    }
    for e in g.edges() {
        let style = if highlight.contains(&e) { " [penwidth=3]" } else { " [color=gray]" };
        let _ = writeln!(out, "  {} -- {}{};", name(e.lo()), name(e.hi()), style);
    }
    out.push_str("}\n");
    out
}
