use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use sqroot::corpus::{read_corpus, write_corpus};
use sqroot::decomposition::write_decomposition;
use sqroot::edge_list::{parse_edge_list, parse_labeled_edge_list, to_dot, write_edge_list};
use sqroot::report::{component_trace, solve_report, ReduceReport};
use sqroot::run::solve_parallel;
use sqroot_core::families::WidthCutoff;
use sqroot_core::gen::{gen_instance, InstanceKind, Label};
use sqroot_core::oracle::{count_roots, enumerate_minimal_roots_capped, DEFAULT_EDGE_CAP};
use sqroot_core::reduction::{reduce, Status};
use sqroot_core::width::{exact_width, power_width_bound, WidthKind};
use sqroot_core::search::Reason;
use sqroot_core::{Answer, Edge, FamilyConfig, FamilyKind, Graph, OracleError, WidthError};

/// Square roots in restricted graph families.
#[derive(Parser, Debug)]
#[command(name = "sqroot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the input has a root in the family.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        family: FamilyArgs,
        /// Per-component search budget; 0 disables it.
        #[arg(long, default_value_t = 30)]
        timeout_secs: u64,
        #[arg(long)]
        json: bool,
        /// Include the per-rule trace in human output.
        #[arg(long)]
        trace: bool,
        /// Write the root as an edge list.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a Graphviz view of the input with root edges in bold.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Enumerate minimal roots by brute force.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Restrict to a family; all roots otherwise.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        cap: usize,
    },
    /// Run the reduction rules only.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        family: FamilyArgs,
        /// Emit the JSON trace.
        #[arg(long)]
        trace: bool,
    },
    /// Exact treewidth or pathwidth with a decomposition.
    Width {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, conflicts_with = "tree")]
        path: bool,
        #[arg(long)]
        tree: bool,
    },
    /// Generate a corpus batch.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Flip one vertex pair of each square.
        #[arg(long)]
        perturbed: bool,
    },
    /// Solve every labelled instance of a corpus and report mismatches.
    VerifyCorpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 30)]
        timeout_secs: u64,
    },
    /// The k-th power of the input, or with --bound the width bound check.
    Power {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long)]
        bound: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Edge-list file, or `-` for stdin.
    input: String,
    /// Header-free input with arbitrary vertex names.
    #[arg(long)]
    labeled: bool,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, default_value = "outerplanar")]
    family: String,
    #[arg(long)]
    c1: Option<u64>,
    #[arg(long)]
    twin_threshold: Option<usize>,
    /// An integer or `unlimited`.
    #[arg(long)]
    width_cutoff: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
}

impl FamilyArgs {
    fn config(&self) -> Result<FamilyConfig> {
        let kind = family_kind(&self.family)?;
        let mut fam = match self.c1 {
            Some(c1) => FamilyConfig::with_c1(kind, c1),
            None => FamilyConfig::new(kind),
        };
        if let Some(t) = self.twin_threshold {
            fam.twin_threshold = t;
        }
        if let Some(c) = &self.width_cutoff {
            fam.width_cutoff = match c.as_str() {
                "unlimited" => WidthCutoff::Unlimited,
                s => WidthCutoff::AtMost(s.parse().with_context(|| format!("bad --width-cutoff {s}"))?),
            };
        }
        if let Some(d) = self.max_degree {
            fam = fam.with_max_degree(d);
        }
        for w in fam.warnings() {
            eprintln!("warning: {w}");
        }
        Ok(fam)
    }
}

fn family_kind(name: &str) -> Result<FamilyKind> {
    FamilyKind::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = FamilyKind::ALL.iter().map(|k| k.name()).collect();
        anyhow!("unknown family {name} (expected one of {})", known.join(", "))
    })
}

/// Errors that map to exit code 2 instead of 3.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct CapError(String);

struct Input {
    graph: Graph,
    labels: Option<Vec<String>>,
}

impl Input {
    fn name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    fn edges(&self, edges: &[Edge]) -> String {
        let parts: Vec<String> = edges.iter().map(|e| format!("{}-{}", self.name(e.lo()), self.name(e.hi()))).collect();
        parts.join(" ")
    }
}

fn read_input(args: &InputArgs) -> Result<Input> {
    let text = if args.input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input))?
    };
    let ctx = || format!("parsing {}", args.input);
    if args.labeled {
        let l = parse_labeled_edge_list(&text).with_context(ctx)?;
        Ok(Input { graph: l.graph, labels: Some(l.labels) })
    } else {
        Ok(Input { graph: parse_edge_list(&text).with_context(ctx)?, labels: None })
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn timeout(secs: u64) -> Option<Duration> {
    (secs > 0).then(|| Duration::from_secs(secs))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<CapError>().is_some() { 2 } else { 3 })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Solve { input, family, timeout_secs, json, trace, out, dot } => {
            let fam = family.config()?;
            let inp = read_input(&input)?;
            let outcome = solve_parallel(&inp.graph, &fam, timeout(timeout_secs));
            let report = solve_report(&outcome, &fam.name());
            if json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(stdout, "answer: {}", report.answer)?;
                writeln!(stdout, "family: {}", report.family)?;
                if let Some(root) = &outcome.root {
                    writeln!(stdout, "root: {}", inp.edges(root))?;
                }
                if let Some(r) = &report.reason {
                    writeln!(stdout, "reason: {} ({})", r.code, r.detail)?;
                }
                writeln!(stdout, "nodes: {}", report.stats.nodes_expanded)?;
                if trace {
                    for c in &report.stats.rule_trace {
                        writeln!(stdout, "component {:?}: {}", c.vertices, c.status)?;
                        for s in &c.steps {
                            writeln!(
                                stdout,
                                "  {:<12} edges {} -> {}  R={} B={} S={} U={}",
                                s.rule, s.edges_before, s.edges_after, s.red, s.blue, s.deleted, s.hubs
                            )?;
                        }
                    }
                }
            }
            let root = outcome.root.clone().unwrap_or_default();
            if let Some(path) = out {
                if outcome.answer == Answer::Yes {
                    let h = Graph::from_edge_set(inp.graph.n(), root.iter().copied())?;
                    write_file(&path, &write_edge_list(&h))?;
                }
            }
            if let Some(path) = dot {
                write_file(&path, &to_dot(&inp.graph, &root, inp.labels.as_deref()))?;
            }
            Ok(match (outcome.answer, &outcome.reason) {
                (Answer::Yes, _) => 0,
                (Answer::No, _) => 1,
                (Answer::Unknown, Some(Reason::Internal(msg))) => {
                    eprintln!("error: {msg}");
                    2
                }
                (Answer::Unknown, _) => 2,
            })
        }
        Command::Oracle { input, family, cap } => {
            let fam = family.as_deref().map(family_kind).transpose()?.map(FamilyConfig::new);
            let inp = read_input(&input)?;
            let capped = |e: OracleError| match e {
                OracleError::CapExceeded { .. } => anyhow::Error::new(CapError(e.to_string())),
                e => anyhow::Error::new(e),
            };
            let minimal = enumerate_minimal_roots_capped(&inp.graph, fam.as_ref(), cap).map_err(capped)?;
            let total = match &fam {
                None => count_roots(&inp.graph, cap).map_err(capped)?,
                Some(f) => {
                    let mut k = 0;
                    sqroot_core::oracle::for_each_root(&inp.graph, Some(f), cap, |_| {
                        k += 1;
                        std::ops::ControlFlow::Continue(())
                    })
                    .map_err(capped)?;
                    k
                }
            };
            for w in &minimal {
                writeln!(stdout, "{}", inp.edges(&w.edges))?;
            }
            writeln!(stdout, "roots={} minimal={}", total, minimal.len())?;
            Ok(if minimal.is_empty() { 1 } else { 0 })
        }
        Command::Reduce { input, family, trace } => {
            let fam = family.config()?;
            let inp = read_input(&input)?;
            let g = &inp.graph;
            let components: Vec<_> = g
                .connected_components()
                .into_iter()
                .map(|comp| {
                    let inst = reduce(&g.induced_subgraph(&comp), &fam);
                    let answer = match inst.status {
                        Status::Running => "running",
                        Status::NoAnswer(_) => "no",
                    };
                    component_trace(&comp, &inst, answer, None)
                })
                .collect();
            let refused = components.iter().any(|c| c.answer == "no");
            if trace {
                let report = ReduceReport { family: fam.name(), components };
                writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                for c in &components {
                    let last = c.steps.last();
                    writeln!(
                        stdout,
                        "component {:?}: {} twins deleted, R={} B={} S={} U={}, edges {} -> {}, {}",
                        c.vertices,
                        c.twin_log.len(),
                        c.red.len(),
                        c.blue.len(),
                        c.deleted.len(),
                        c.hubs.len(),
                        c.steps.first().map_or(0, |s| s.edges_before),
                        last.map_or(0, |s| s.edges_after),
                        c.status
                    )?;
                }
            }
            Ok(u8::from(refused))
        }
        Command::Width { input, path, tree: _ } => {
            let kind = if path { WidthKind::Path } else { WidthKind::Tree };
            let inp = read_input(&input)?;
            let (w, dec) = exact_width(&inp.graph, kind).map_err(|e| match e {
                WidthError::CapExceeded { .. } => anyhow::Error::new(CapError(e.to_string())),
            })?;
            writeln!(stdout, "{w}")?;
            write!(stdout, "{}", write_decomposition(&dec))?;
            Ok(0)
        }
        Command::Gen { family, n, count, seed, out, perturbed } => {
            let kind = family_kind(&family)?;
            if n == 0 {
                bail!("--n must be positive");
            }
            let ik = if perturbed { InstanceKind::Perturbed } else { InstanceKind::Positive };
            let instances: Vec<_> = (seed..seed + count).map(|s| gen_instance(kind, n, s, ik)).collect();
            let manifest = write_corpus(&out, &instances)?;
            writeln!(stdout, "wrote {} instances to {}", manifest.instances.len(), out.display())?;
            Ok(0)
        }
        Command::VerifyCorpus { dir, timeout_secs } => {
            let mut instances = read_corpus(&dir)?;
            instances.sort_by(|a, b| a.name.cmp(&b.name));
            let limit = timeout(timeout_secs);
            let results: Vec<_> = instances
                .par_iter()
                .map(|inst| {
                    let fam = FamilyConfig::new(inst.family);
                    solve_parallel(&inst.square, &fam, limit).answer
                })
                .collect();
            let (mut checked, mut unlabeled, mut mismatches, mut unknown) = (0, 0, 0, 0);
            for (inst, answer) in instances.iter().zip(&results) {
                let expected = match inst.label {
                    Label::Yes => Answer::Yes,
                    Label::No => Answer::No,
                    Label::Unlabeled => {
                        unlabeled += 1;
                        if *answer == Answer::Unknown {
                            unknown += 1;
                            writeln!(stdout, "unknown {}", inst.name)?;
                        }
                        continue;
                    }
                };
                checked += 1;
                if *answer == Answer::Unknown {
                    unknown += 1;
                    writeln!(stdout, "unknown {} expected={}", inst.name, expected.name())?;
                } else if *answer != expected {
                    mismatches += 1;
                    writeln!(stdout, "mismatch {} expected={} got={}", inst.name, expected.name(), answer.name())?;
                }
            }
            writeln!(
                stdout,
                "instances={} checked={checked} unlabeled={unlabeled} mismatches={mismatches} unknown={unknown}",
                instances.len()
            )?;
            Ok(if mismatches > 0 { 1 } else if unknown > 0 { 2 } else { 0 })
        }
        Command::Power { input, k, bound, out } => {
            if k == 0 {
                bail!("--k must be positive");
            }
            let inp = read_input(&input)?;
            let p = inp.graph.kth_power(k as usize);
            if bound {
                let cap = |e: WidthError| anyhow::Error::new(CapError(e.to_string()));
                for kind in [WidthKind::Tree, WidthKind::Path] {
                    let (w, _) = exact_width(&inp.graph, kind).map_err(cap)?;
                    let (wk, _) = exact_width(&p, kind).map_err(cap)?;
                    let b = power_width_bound(w as u64, inp.graph.max_degree() as u64, k);
                    let tag = if kind == WidthKind::Tree { "tw" } else { "pw" };
                    writeln!(stdout, "{tag}(G)={w} {tag}(G^{k})={wk} bound={b} holds={}", wk as u64 <= b)?;
                }
            } else {
                match out {
                    Some(path) => write_file(&path, &write_edge_list(&p))?,
                    None => write!(stdout, "{}", write_edge_list(&p))?,
                }
            }
            Ok(0)
        }
    }
}
