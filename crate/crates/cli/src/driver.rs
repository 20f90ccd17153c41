//! Parallel driver for the subspace search: one rayon task per first DFS
//! index, sharing a node counter.

use std::collections::BTreeSet;

use rayon::prelude::*;

use quadhull_core::search::{finish, solve_branch, NodeCounter, SearchProblem, SearchResult, DEFAULT_NODE_BUDGET};

use crate::CliError;

pub const BUDGET_ENV: &str = "QH_NODE_BUDGET";

/// `QH_NODE_BUDGET` if set, else the default budget, or no budget at all
/// for `--long` runs.
pub fn node_budget(long: bool) -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Parse(format!("{BUDGET_ENV} must be an integer, got {v:?}"))),
        Err(_) if long => Ok(u64::MAX),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

/// Runs every branch on a pool of `workers` threads (0 = rayon default).
pub fn search(p: &SearchProblem, n: usize, budget: u64, workers: usize) -> Result<SearchResult, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Parse(format!("thread pool: {e}")))?;
    let counter = NodeCounter::new(budget);
    let sets: Vec<BTreeSet<_>> = pool.install(|| {
        (0..p.branches(n)).into_par_iter().map(|b| solve_branch(p, n, b, &counter)).collect::<Result<_, _>>()
    })?;
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    Ok(finish(p, n, all, counter.nodes())?)
}
