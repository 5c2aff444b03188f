//! Wall-clock budgets and the parallel solver.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use sqroot_core::search::{combine, solve_component, Budget, Unlimited};
use sqroot_core::{FamilyConfig, Graph, SolveOutcome};

/// Exhausted once the deadline passes.
#[derive(Debug, Clone, Copy)]
pub struct TimeBudget {
    deadline: Instant,
}

impl TimeBudget {
    pub fn new(limit: Duration) -> Self {
        TimeBudget { deadline: Instant::now() + limit }
    }
}

impl Budget for TimeBudget {
    fn exhausted(&self) -> bool {
        Instant::now() >= self.deadline
    }
}

/// Components in parallel, each with its own `timeout` (none means no limit).
pub fn solve_parallel(g: &Graph, fam: &FamilyConfig, timeout: Option<Duration>) -> SolveOutcome {
    let reports = g
        .connected_components()
        .into_par_iter()
        .map(|comp| match timeout {
            Some(t) => solve_component(g, comp, fam, &TimeBudget::new(t)),
            None => solve_component(g, comp, fam, &Unlimited),
        })
        .collect();
    combine(g, fam, reports)
}
