//! Deterministic data-parallel mapping for parameter sweeps.
//!
//! The heavy workloads — oracle diagonalizations over a parameter grid —
//! are embarrassingly parallel, so the sweep drivers funnel through one
//! helper, [`map_ordered`].  With the `parallel` feature (on by default) it
//! fans the work out over a rayon pool; without the feature, or when the
//! caller asks for [`Parallelism::Serial`] at runtime, it runs a plain
//! sequential loop.  Either way the output order matches the input order
//! element for element, so downstream formatting is byte-identical across
//! all three paths.
//!
//! The pool size can be capped with the `CURVED_MIE_THREADS` environment
//! variable (a positive integer), the only environment variable this crate
//! reads.

use crate::error::{Error, Result};

/// Runtime switch between the rayon pool and a sequential loop.
///
/// Distinct from the compile-time `parallel` feature: a binary built with
/// the feature can still select `Serial` (e.g. for timing baselines), while
/// a build without the feature runs sequentially regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    /// Use the rayon pool when compiled in.
    Parallel,
    /// Always run the plain loop.
    Serial,
}

/// Maps `f` over `inputs`, preserving order.
///
/// The parallel path relies on rayon's indexed collect, which places each
/// result at its input's position; no reordering can be observed from
/// outside, and repeated runs produce identical vectors.
#[cfg(feature = "parallel")]
pub fn map_ordered<I, O, F>(inputs: &[I], parallelism: Parallelism, f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    use rayon::prelude::*;
    match parallelism {
        Parallelism::Parallel => inputs.par_iter().map(f).collect(),
        Parallelism::Serial => inputs.iter().map(f).collect(),
    }
}

/// Maps `f` over `inputs`, preserving order (sequential build).
#[cfg(not(feature = "parallel"))]
pub fn map_ordered<I, O, F>(inputs: &[I], parallelism: Parallelism, f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    let _ = parallelism;
    inputs.iter().map(f).collect()
}

/// Reads the `CURVED_MIE_THREADS` cap: `None` when unset or set to `0`
/// (auto — let the pool size itself), the count when set to a positive
/// integer, an error otherwise.
pub fn thread_limit() -> Result<Option<usize>> {
    match std::env::var("CURVED_MIE_THREADS") {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(Error::InvalidParameter {
                name: "CURVED_MIE_THREADS",
                value: f64::NAN,
                requirement: "a non-negative integer thread count (0 = auto)",
            }),
        },
    }
}

/// Applies the `CURVED_MIE_THREADS` cap to the global rayon pool.
///
/// Returns `true` when a cap was requested and installed.  Installing twice
/// (or after the pool has already spun up) leaves the existing pool in
/// place and returns `false` — the cap is best-effort, never an error, so
/// library users who build their own pools are not fought over it.  An
/// unparsable value is still reported as an error so typos do not silently
/// run unpinned.
pub fn install_thread_limit() -> Result<bool> {
    let limit = thread_limit()?;
    #[cfg(feature = "parallel")]
    if let Some(n) = limit {
        return Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_ok());
    }
    let _ = limit;
    Ok(false)
}
