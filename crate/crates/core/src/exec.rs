//! Sequential and data-parallel drivers for the exhaustive searches.
//!
//! Every driver returns the same answer under either strategy: searches
//! report the first hit in index order, reductions are order-independent.

use std::fmt;
use std::str::FromStr;

/// How an enumeration is executed.
///
/// Without the `parallel` feature, [`Execution::Parallel`] runs sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl fmt::Display for Execution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Execution::Sequential => "sequential",
            Execution::Parallel => "parallel",
        })
    }
}

impl FromStr for Execution {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sequential" | "seq" => Ok(Execution::Sequential),
            "parallel" | "par" => Ok(Execution::Parallel),
            other => Err(format!("unknown execution strategy `{other}`")),
        }
    }
}

/// Indices per work unit.
pub(crate) const CHUNK: u64 = 1 << 12;

fn chunk_bounds(total: u64, chunk: u64) -> impl Fn(u64) -> (u64, u64) {
    move |c| (c * chunk, ((c + 1) * chunk).min(total))
}

/// Scans `0..total` in chunks; `scan(start, end)` returns the first hit in
/// its half-open range. Returns the hit with the smallest index overall.
pub(crate) fn find_first<T, F>(exec: Execution, total: u64, scan: F) -> Option<T>
where
    T: Send,
    F: Fn(u64, u64) -> Option<T> + Sync + Send,
{
    let chunks = total.div_ceil(CHUNK);
    let bounds = chunk_bounds(total, CHUNK);
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..chunks).into_par_iter().find_map_first(|c| {
                let (s, e) = bounds(c);
                scan(s, e)
            })
        }
        _ => (0..chunks).find_map(|c| {
            let (s, e) = bounds(c);
            scan(s, e)
        }),
    }
}

/// Maps every index of `0..total` and folds the results with an
/// associative, commutative `combine`.
pub(crate) fn map_reduce<T, M, R>(exec: Execution, total: u64, identity: T, map: M, combine: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..total)
                .into_par_iter()
                .map(&map)
                .reduce(|| identity.clone(), &combine)
        }
        _ => (0..total).map(map).fold(identity, combine),
    }
}
