//! Whole-table computation with the symmetry classes spread over a worker pool.

use std::collections::BTreeMap;

use nilhom_core::assemble::{preflight, NilTable, TablePlan};
use nilhom_core::reduce::{ReduceConfig, Reducer};
use nilhom_core::{Error, Result};
use rayon::prelude::*;

use crate::cache::SharedCache;

#[derive(Clone, Debug)]
pub struct TableOptions {
    /// Worker threads; 0 lets the pool choose.
    pub jobs: usize,
    pub config: ReduceConfig,
    pub preflight: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self { jobs: 0, config: ReduceConfig::default(), preflight: true }
    }
}

/// Computes `H_*(nil_n)`. The result does not depend on `jobs`: classes are
/// collected in their canonical order before assembly.
pub fn compute_table(n: usize, opts: &TableOptions, cache: &SharedCache) -> Result<NilTable> {
    if opts.preflight {
        preflight(n, opts.config.cap, opts.config.rules)?;
    }
    let plan = TablePlan::new(n)?;
    let classes: Vec<_> = plan.classes().map(|(w, _)| w.clone()).collect();
    let reducer = Reducer::new(opts.config, cache);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("worker pool");
    let outcomes: Vec<_> = pool.install(|| classes.par_iter().map(|w| (w, reducer.profile(w))).collect());

    let mut results = BTreeMap::new();
    let mut unfinished = Vec::new();
    for (w, outcome) in outcomes {
        match outcome {
            Ok(p) => {
                results.insert(w.clone(), p);
            }
            Err(Error::ResourceLimitExceeded { unfinished: u, .. }) => unfinished.extend(u),
            Err(e) => return Err(e),
        }
    }
    if !unfinished.is_empty() {
        unfinished.sort_by(|a, b| a.weight.cmp(&b.weight));
        unfinished.dedup();
        return Err(Error::ResourceLimitExceeded { cap: opts.config.cap, unfinished });
    }
    Ok(plan.assemble(&results))
}
