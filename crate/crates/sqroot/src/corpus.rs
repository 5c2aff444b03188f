//! Instance corpora on disk: `manifest.json`, `<name>.el` for each square
//! and `<name>.root` for each planted root.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sqroot_core::gen::{Instance, InstanceKind, Label};
use sqroot_core::{FamilyKind, Graph};

use crate::edge_list::{parse_edge_list, write_edge_list, ParseError};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub family: String,
    pub instances: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    /// Vertex count of the root.
    pub n: usize,
    pub seed: u64,
    /// `positive` or `perturbed`.
    pub kind: String,
    /// `yes`, `no` or `unlabeled`.
    pub label: String,
    pub edges: usize,
    pub has_root: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("manifest: {0}")]
    Manifest(String),
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io { path: path.display().to_string(), source }
}

fn read_graph(path: &Path) -> Result<Graph, CorpusError> {
    let text = fs::read_to_string(path).map_err(io(path))?;
    parse_edge_list(&text).map_err(|source| CorpusError::Parse { path: path.display().to_string(), source })
}

/// Writes one batch. All instances must share a family.
pub fn write_corpus(dir: &Path, instances: &[Instance]) -> Result<Manifest, CorpusError> {
    let family = match instances.first() {
        Some(i) => i.family,
        None => return Err(CorpusError::Manifest("empty batch".into())),
    };
    if instances.iter().any(|i| i.family != family) {
        return Err(CorpusError::Manifest("mixed families in one batch".into()));
    }
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut entries = Vec::with_capacity(instances.len());
    for inst in instances {
        let el = dir.join(format!("{}.el", inst.name));
        fs::write(&el, write_edge_list(&inst.square)).map_err(io(&el))?;
        if let Some(root) = &inst.planted_root {
            let path = dir.join(format!("{}.root", inst.name));
            fs::write(&path, write_edge_list(root)).map_err(io(&path))?;
        }
        entries.push(ManifestEntry {
            name: inst.name.clone(),
            n: inst.n,
            seed: inst.seed,
            kind: inst.kind.name().to_string(),
            label: inst.label.name().to_string(),
            edges: inst.square.m(),
            has_root: inst.planted_root.is_some(),
        });
    }
    let manifest = Manifest { family: family.name().to_string(), instances: entries };
    let path = dir.join(MANIFEST);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json + "\n").map_err(io(&path))?;
    Ok(manifest)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest, CorpusError> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(io(&path))?;
    serde_json::from_str(&text).map_err(|source| CorpusError::Json { path: path.display().to_string(), source })
}

/// Loads a batch back into instances, in manifest order.
pub fn read_corpus(dir: &Path) -> Result<Vec<Instance>, CorpusError> {
    let manifest = read_manifest(dir)?;
    let family = FamilyKind::from_name(&manifest.family)
        .ok_or_else(|| CorpusError::Manifest(format!("unknown family {}", manifest.family)))?;
    manifest
        .instances
        .iter()
        .map(|e| {
            let kind = match e.kind.as_str() {
                "positive" => InstanceKind::Positive,
                "perturbed" => InstanceKind::Perturbed,
                k => return Err(CorpusError::Manifest(format!("{}: unknown kind {k}", e.name))),
            };
            let label = match e.label.as_str() {
                "yes" => Label::Yes,
                "no" => Label::No,
                "unlabeled" => Label::Unlabeled,
                l => return Err(CorpusError::Manifest(format!("{}: unknown label {l}", e.name))),
            };
            let square = read_graph(&dir.join(format!("{}.el", e.name)))?;
            if square.m() != e.edges {
                return Err(CorpusError::Manifest(format!("{}: edge count differs from manifest", e.name)));
            }
            let planted_root = if e.has_root {
                Some(read_graph(&dir.join(format!("{}.root", e.name)))?)
            } else {
                None
            };
            Ok(Instance { name: e.name.clone(), square, planted_root, family, n: e.n, seed: e.seed, kind, label })
        })
        .collect()
}
