//! Random family members, planted-root instances, and small-graph
//! enumeration.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::families::{FamilyConfig, FamilyKind};
use crate::graph::{Edge, Graph, Vertex};
use crate::oracle::{has_family_root_capped, DEFAULT_EDGE_CAP};

fn rng_for(kind: FamilyKind, n: usize, seed: u64, salt: u64) -> ChaCha8Rng {
    let tag = FamilyKind::ALL.iter().position(|&k| k == kind).unwrap_or(0) as u64;
    let mixed = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(tag << 40)
        .wrapping_add((n as u64) << 20)
        .wrapping_add(salt);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// A random member of `kind` on `n` vertices, randomly relabelled.
/// Deterministic in its arguments.
pub fn gen_family_graph(kind: FamilyKind, n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "need at least one vertex");
    let mut rng = rng_for(kind, n, seed, 0);
    let edges = match kind {
        FamilyKind::Forest => forest(n, &mut rng),
        FamilyKind::CaterpillarForest => caterpillar(n, &mut rng),
        FamilyKind::Cactus => cactus(n, &mut rng),
        FamilyKind::Outerplanar => outerplanar(n, &mut rng),
        FamilyKind::Pw2 => pw2(n, &mut rng),
    };
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let g = Graph::from_edge_set(n, edges.into_iter().map(|(a, b)| Edge::new(perm[a], perm[b])))
        .expect("generators emit simple graphs");
    debug_assert!(kind.contains(&g), "{kind} generator produced a non-member");
    g
}

fn forest(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(0.9) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    edges
}

fn caterpillar(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let spine = rng.gen_range(1..=n);
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|v| (v - 1, v)).collect();
    edges.extend((spine..n).map(|v| (rng.gen_range(0..spine), v)));
    edges
}

fn cactus(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let at = rng.gen_range(0..count);
        let room = n - count;
        if room >= 2 && rng.gen_bool(0.6) {
            // A cycle through `at` with `len - 1` new vertices.
            let len = rng.gen_range(3..=(room + 1).min(6));
            let mut prev = at;
            for _ in 1..len {
                edges.push((prev, count));
                prev = count;
                count += 1;
            }
            edges.push((prev, at));
        } else {
            edges.push((at, count));
            count += 1;
        }
    }
    edges
}

fn outerplanar(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n < 3 {
        return (1..n).map(|v| (v - 1, v)).collect();
    }
    let mut all: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    let polygon: Vec<usize> = (0..n).collect();
    triangulate(&polygon, rng, &mut all);
    // Random deletions that keep the graph connected.
    let mut kept = all.clone();
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.shuffle(rng);
    for i in order {
        if !rng.gen_bool(0.35) {
            continue;
        }
        let e = all[i];
        let trial: Vec<(usize, usize)> = kept.iter().copied().filter(|&f| f != e).collect();
        if Graph::from_edges(n, trial.iter().copied()).map_or(false, |g| g.is_connected()) {
            kept = trial;
        }
    }
    kept
}

fn triangulate(poly: &[usize], rng: &mut ChaCha8Rng, out: &mut Vec<(usize, usize)>) {
    let m = poly.len();
    if m <= 3 {
        return;
    }
    let k = rng.gen_range(1..m - 1);
    if k > 1 {
        out.push((poly[0], poly[k]));
    }
    if k < m - 2 {
        out.push((poly[k], poly[m - 1]));
    }
    triangulate(&poly[..=k], rng, out);
    triangulate(&poly[k..], rng, out);
}

/// Introduce-forget sequence with bags of at most three vertices.
fn pw2(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut bag: Vec<usize> = vec![0];
    for v in 1..n {
        let mut linked = false;
        for &w in &bag {
            if rng.gen_bool(0.6) {
                edges.push((w, v));
                linked = true;
            }
        }
        if !linked && rng.gen_bool(0.9) {
            edges.push((*bag.choose(rng).expect("bag is never empty"), v));
        }
        bag.push(v);
        if bag.len() == 3 {
            let drop = rng.gen_range(0..3);
            bag.remove(drop);
        } else if bag.len() == 2 && rng.gen_bool(0.3) {
            bag.remove(0);
        }
    }
    edges
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    Positive,
    Perturbed,
}

impl InstanceKind {
    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Positive => "positive",
            InstanceKind::Perturbed => "perturbed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Yes,
    No,
    Unlabeled,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Yes => "yes",
            Label::No => "no",
            Label::Unlabeled => "unlabeled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub square: Graph,
    pub planted_root: Option<Graph>,
    pub family: FamilyKind,
    pub n: usize,
    pub seed: u64,
    pub kind: InstanceKind,
    pub label: Label,
}

/// A positive instance squares a generated member. A perturbed one flips a
/// single vertex pair of such a square and is labelled by the oracle when it
/// is small enough.
pub fn gen_instance(fam: FamilyKind, n: usize, seed: u64, kind: InstanceKind) -> Instance {
    let root = gen_family_graph(fam, n, seed);
    let square = root.square();
    let name = format!("{}-n{}-s{}-{}", fam.name(), n, seed, kind.name());
    match kind {
        InstanceKind::Positive => Instance {
            name,
            square,
            planted_root: Some(root),
            family: fam,
            n,
            seed,
            kind,
            label: Label::Yes,
        },
        InstanceKind::Perturbed => {
            let mut rng = rng_for(fam, n, seed, 1);
            let square = if n < 2 {
                square
            } else {
                let a = rng.gen_range(0..n);
                let mut b = rng.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                let e = Edge::new(a, b);
                if square.contains_edge(e) {
                    square.without_edges([e])
                } else {
                    square.with_edges([e])
                }
            };
            let label = if square.m() <= DEFAULT_EDGE_CAP {
                match has_family_root_capped(&square, &FamilyConfig::new(fam), DEFAULT_EDGE_CAP) {
                    Ok(true) => Label::Yes,
                    Ok(false) => Label::No,
                    Err(_) => Label::Unlabeled,
                }
            } else {
                Label::Unlabeled
            };
            Instance {
                name,
                square,
                planted_root: None,
                family: fam,
                n,
                seed,
                kind,
                label,
            }
        }
    }
}

/// Every connected graph on `n` vertices up to isomorphism, each in its
/// canonical labelling. Exhaustive; meant for `n <= 6`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive enumeration is only for tiny n");
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut pidx = vec![0usize; n * n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        pidx[a * n + b] = i;
        pidx[b * n + a] = i;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let adj = |a: usize, b: usize| mask >> pidx[a * n + b] & 1 == 1;
        let canon = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().fold(0u64, |acc, (i, &(a, b))| {
                    acc | (u64::from(adj(p[a], p[b])) << i)
                })
            })
            .min()
            .expect("at least one permutation");
        if canon != mask || !seen.insert(canon) {
            continue;
        }
        let g = Graph::from_edges(
            n,
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p),
        )
        .expect("simple");
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, a, out);
        let j = if k % 2 == 0 { i } else { 0 };
        a.swap(j, k - 1);
    }
}
