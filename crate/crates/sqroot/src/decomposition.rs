//! Text form of decompositions: `bag <id> : v1 v2 ...` lines, then
//! `tree-edge a b` lines for tree decompositions.

use std::fmt::Write as _;

use sqroot_core::width::{Decomposition, WidthKind};

pub fn write_decomposition(dec: &Decomposition) -> String {
    let mut out = String::new();
    for (i, bag) in dec.bags.iter().enumerate() {
        let _ = write!(out, "bag {i} :");
        for v in bag {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for &(a, b) in &dec.tree_edges {
        let _ = writeln!(out, "tree-edge {a} {b}");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionParseError {
    #[error("line {0}: expected `bag <id> : ...` or `tree-edge a b`")]
    BadLine(usize),
    #[error("line {0}: bag ids must be 0, 1, 2, ... in order")]
    BagOrder(usize),
}

pub fn parse_decomposition(text: &str, kind: WidthKind) -> Result<Decomposition, DecompositionParseError> {
    let mut bags = Vec::new();
    let mut tree_edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let no = i + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("bag ") {
            let (id, members) = rest.split_once(':').ok_or(DecompositionParseError::BadLine(no))?;
            let id: usize = id.trim().parse().map_err(|_| DecompositionParseError::BadLine(no))?;
            if id != bags.len() {
                return Err(DecompositionParseError::BagOrder(no));
            }
            let bag = members
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| DecompositionParseError::BadLine(no)))
                .collect::<Result<Vec<usize>, _>>()?;
            bags.push(bag);
        } else if let Some(rest) = line.strip_prefix("tree-edge ") {
            let mut it = rest.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => tree_edges.push((a, b)),
                _ => return Err(DecompositionParseError::BadLine(no)),
            }
        } else {
            return Err(DecompositionParseError::BadLine(no));
        }
    }
    Ok(Decomposition { kind, bags, tree_edges })
}
