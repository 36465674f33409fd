//! Options and the prefix-parallel driver shared by the exhaustive searches.
//!
//! A search is cut into a fixed list of prefixes. Prefixes are solved in
//! batches on a worker pool and their tallies added in prefix order, so the
//! result does not depend on the number of workers. Completed prefixes are
//! recorded in a checkpoint file that a later run can resume from.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::budget::Budget;
use crate::checkpoint::Checkpoint;
use crate::count::{LocalCount, SignedCount};
use crate::error::{Error, Result};

/// Runtime knobs shared by every exhaustive search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    /// Maximum number of search nodes before giving up.
    pub budget_nodes: Option<u64>,
    pub checkpoint: Option<CheckpointConfig>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            budget_nodes: None,
            checkpoint: None,
        }
    }
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions {
            workers: workers.max(1),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckpointConfig {
    pub path: PathBuf,
    pub interval: Duration,
}

/// Identifies what a checkpoint belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckpointTag {
    pub design: serde_json::Value,
    pub class: serde_json::Value,
}

pub(crate) fn worker_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))
}

/// Solves prefixes `0..count` with `solve`, which returns a main tally and a
/// symbol tally (ignored unless `symbol`).
pub(crate) fn run_prefixes<F>(
    count: usize,
    opts: &SearchOptions,
    tag: &CheckpointTag,
    symbol: bool,
    solve: F,
) -> Result<(SignedCount, SignedCount)>
where
    F: Fn(usize, &Budget) -> Result<(LocalCount, LocalCount)> + Sync,
{
    let mut done = vec![false; count];
    let mut main = SignedCount::zero();
    let mut sym = SignedCount::zero();

    if let Some(cfg) = &opts.checkpoint {
        if let Some(cp) = Checkpoint::load(&cfg.path)? {
            cp.check_matches(tag, count)?;
            for &i in &cp.completed_prefixes {
                done[i] = true;
            }
            main = cp.partial;
            sym = cp.symbol_partial.unwrap_or_default();
        }
    }

    let budget = Budget::new(opts.budget_nodes);
    let pool = worker_pool(opts.workers)?;
    let todo: Vec<usize> = (0..count).filter(|&i| !done[i]).collect();
    let batch = opts.workers.max(1) * 4;
    let mut last_write = Instant::now();
    let save = |done: &[bool], main: &SignedCount, sym: &SignedCount| -> Result<()> {
        if let Some(cfg) = &opts.checkpoint {
            Checkpoint::new(tag, done, main.clone(), symbol.then(|| sym.clone())).save(&cfg.path)?;
        }
        Ok(())
    };

    for chunk in todo.chunks(batch) {
        let results: Vec<_> = pool.install(|| chunk.par_iter().map(|&i| solve(i, &budget)).collect());
        let mut exceeded = budget.exhausted();
        for (&i, r) in chunk.iter().zip(results) {
            match r {
                Ok((a, b)) => {
                    main += SignedCount::from(a);
                    sym += SignedCount::from(b);
                    done[i] = true;
                }
                Err(Error::BudgetExceeded { .. }) => exceeded = true,
                Err(e) => return Err(e),
            }
        }
        if exceeded {
            save(&done, &main, &sym)?;
            return Err(budget.error());
        }
        if let Some(cfg) = &opts.checkpoint {
            if last_write.elapsed() >= cfg.interval {
                save(&done, &main, &sym)?;
                last_write = Instant::now();
            }
        }
    }
    save(&done, &main, &sym)?;
    Ok((main, sym))
}
