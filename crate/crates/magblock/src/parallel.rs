//! Grid sweeps spread over a rayon pool.

use magblock_core::sweep::SweepPlan;
use magblock_core::{AxisSpec, Error, SweepRecord, SweepResult, SystemParams};
use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Solve(#[from] Error),
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Solves every grid point of `axes` over `base`.
///
/// Records come back in grid order whatever the worker count, and when
/// several points fail the one with the smallest grid index is reported.
pub fn run_sweep_parallel(
    base: &SystemParams,
    axes: &[AxisSpec],
    workers: Option<usize>,
) -> Result<SweepResult, SweepError> {
    let plan = SweepPlan::new(base.clone(), axes.to_vec())?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build()?;
    let outcomes: Vec<Result<SweepRecord, Error>> = pool.install(|| {
        (0..plan.len())
            .into_par_iter()
            .map(|k| plan.solve_point(k))
            .collect()
    });
    let records = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(plan.assemble(records)?)
}
