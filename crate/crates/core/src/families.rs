//! Subgraph-closed families and the pipeline parameters attached to each.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::minor::{has_k23_minor, has_k4_minor};
use crate::width::{pathwidth_at_most, power_width_bound, WidthKind};

/// Default for the pw2 twin constant. The true value, a Ramsey number, is
/// unknown.
pub const DEFAULT_C1: u64 = 10;
pub const OUTERPLANAR_TWIN_THRESHOLD: usize = 8;
pub const OUTERPLANAR_WIDTH_CUTOFF: u64 = 222_264;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    Outerplanar,
    Pw2,
    Forest,
    Cactus,
    CaterpillarForest,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Outerplanar,
        FamilyKind::Pw2,
        FamilyKind::Forest,
        FamilyKind::Cactus,
        FamilyKind::CaterpillarForest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Outerplanar => "outerplanar",
            FamilyKind::Pw2 => "pw2",
            FamilyKind::Forest => "forest",
            FamilyKind::Cactus => "cactus",
            FamilyKind::CaterpillarForest => "caterpillar",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Which of the two reduction pipelines this family rides on.
    pub fn pipeline(self) -> Pipeline {
        match self {
            FamilyKind::Outerplanar | FamilyKind::Forest | FamilyKind::Cactus => Pipeline::Outerplanar,
            FamilyKind::Pw2 | FamilyKind::CaterpillarForest => Pipeline::Pw2,
        }
    }

    /// Membership can be tested in near-linear time.
    pub fn is_cheap(self) -> bool {
        !matches!(self, FamilyKind::Outerplanar | FamilyKind::Pw2)
    }

    pub fn contains(self, g: &Graph) -> bool {
        match self {
            FamilyKind::Outerplanar => is_outerplanar(g),
            FamilyKind::Pw2 => pathwidth_at_most(g, 2),
            FamilyKind::Forest => g.is_acyclic(),
            FamilyKind::Cactus => is_cactus(g),
            FamilyKind::CaterpillarForest => is_caterpillar_forest(g),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pipeline {
    Outerplanar,
    Pw2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwinRule {
    /// Only simplicial true twins count towards the threshold.
    SimplicialTwins,
    AllTwins,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WidthCutoff {
    Unlimited,
    AtMost(u64),
}

impl WidthCutoff {
    /// Whether a graph on `n` vertices can never exceed this cutoff.
    pub fn vacuous_for(self, n: usize) -> bool {
        match self {
            WidthCutoff::Unlimited => true,
            WidthCutoff::AtMost(c) => c >= n as u64,
        }
    }

    pub fn exceeded_by(self, width: usize) -> bool {
        match self {
            WidthCutoff::Unlimited => false,
            WidthCutoff::AtMost(c) => width as u64 > c,
        }
    }
}

impl fmt::Display for WidthCutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WidthCutoff::Unlimited => f.write_str("unlimited"),
            WidthCutoff::AtMost(c) if *c == u64::MAX => f.write_str("saturated"),
            WidthCutoff::AtMost(c) => write!(f, "{c}"),
        }
    }
}

/// The pw2 constants derived from `c1`. Every value saturates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pw2Constants {
    pub c1: u64,
    pub c2: u64,
    pub c3: u64,
    pub c4: u64,
}

impl Pw2Constants {
    pub fn new(c1: u64) -> Self {
        let c2 = c1.saturating_add(2).saturating_mul(6 * 21);
        let c3 = c1.saturating_mul(15).saturating_add(4);
        let exp = u32::try_from(c3.saturating_add(1) / 2).unwrap_or(u32::MAX);
        // 3 (c2 - 1)^(floor((c3+1)/2) + 1) is the width bound with tw = 2, k = c3 + 1.
        let k = exp.saturating_mul(2).max(1);
        let c4 = power_width_bound(2, c2.saturating_sub(1), k);
        Pw2Constants { c1, c2, c3, c4 }
    }
}

/// A family together with its pipeline parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyConfig {
    pub kind: FamilyKind,
    pub spread_count: usize,
    pub twin_rule: TwinRule,
    pub twin_threshold: usize,
    pub width_kind: WidthKind,
    pub width_cutoff: WidthCutoff,
    /// Extra degree cap. Such families are not closed under pendant addition.
    pub max_degree: Option<usize>,
    /// Only meaningful for the pw2 pipeline.
    pub c1: u64,
}

impl FamilyConfig {
    pub fn new(kind: FamilyKind) -> Self {
        Self::with_c1(kind, DEFAULT_C1)
    }

    pub fn with_c1(kind: FamilyKind, c1: u64) -> Self {
        match kind.pipeline() {
            Pipeline::Outerplanar => FamilyConfig {
                kind,
                spread_count: 3,
                twin_rule: TwinRule::SimplicialTwins,
                twin_threshold: OUTERPLANAR_TWIN_THRESHOLD,
                width_kind: WidthKind::Tree,
                width_cutoff: WidthCutoff::AtMost(OUTERPLANAR_WIDTH_CUTOFF),
                max_degree: None,
                c1,
            },
            Pipeline::Pw2 => {
                let consts = Pw2Constants::new(c1);
                FamilyConfig {
                    kind,
                    spread_count: 5,
                    twin_rule: TwinRule::AllTwins,
                    twin_threshold: usize::try_from(c1.saturating_add(1)).unwrap_or(usize::MAX),
                    width_kind: WidthKind::Path,
                    width_cutoff: WidthCutoff::AtMost(consts.c4),
                    max_degree: None,
                    c1,
                }
            }
        }
    }

    pub fn outerplanar() -> Self {
        Self::new(FamilyKind::Outerplanar)
    }

    pub fn pw2() -> Self {
        Self::new(FamilyKind::Pw2)
    }

    pub fn by_name(name: &str) -> Option<Self> {
        FamilyKind::from_name(name).map(Self::new)
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self
    }

    pub fn name(&self) -> String {
        match self.max_degree {
            None => String::from(self.kind.name()),
            Some(d) => format!("{}-deg{}", self.kind.name(), d),
        }
    }

    pub fn pipeline(&self) -> Pipeline {
        self.kind.pipeline()
    }

    pub fn is_member(&self, g: &Graph) -> bool {
        if let Some(d) = self.max_degree {
            if g.max_degree() > d {
                return false;
            }
        }
        self.kind.contains(g)
    }

    /// Configuration choices the pipeline cannot vouch for.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(d) = self.max_degree {
            out.push(format!(
                "degree cap {d}: the family is not closed under pendant addition, so twin deletion may lose roots"
            ));
        }
        let default = Self::with_c1(self.kind, DEFAULT_C1);
        if self.twin_threshold < default.twin_threshold {
            out.push(format!(
                "twin threshold {} is below the default {}: experimental, verify against the oracle",
                self.twin_threshold, default.twin_threshold
            ));
        }
        out
    }
}

pub fn builtin_families() -> Vec<FamilyConfig> {
    FamilyKind::ALL.into_iter().map(FamilyConfig::new).collect()
}

/// No K4 and no K_{2,3} minor, after an edge-count filter.
pub fn is_outerplanar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 2 && g.m() > 2 * n - 3 {
        return false;
    }
    !has_k4_minor(g) && !has_k23_minor(g)
}

/// Every block is a bridge or a cycle.
pub fn is_cactus(g: &Graph) -> bool {
    g.biconnected_components().iter().all(|block| {
        if block.len() == 1 {
            return true;
        }
        let mut vs: Vec<usize> = block.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == block.len()
    })
}

pub fn is_caterpillar_forest(g: &Graph) -> bool {
    if !g.is_acyclic() {
        return false;
    }
    // Stripping the leaves of a tree leaves a subtree; it is a path iff its
    // degrees stay at most two.
    g.vertices().filter(|&v| g.degree(v) >= 2).all(|v| {
        g.neighbors(v).iter().filter(|&&w| g.degree(w) >= 2).count() <= 2
    })
}
