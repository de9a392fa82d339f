//! Data-parallel execution of independent shards.
//!
//! Work is always split into the same shards with the same RNG streams, so
//! results are bit-identical whichever strategy runs them. Without the
//! `parallel` feature, [`Execution::Parallel`] degrades to sequential.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run shards concurrently.
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Apply `f` to every item, preserving order.
    pub fn map<I, T, F>(self, items: Vec<I>, f: F) -> Vec<T>
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Apply `f` to every element of a slice, preserving order.
    pub fn map_slice<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

/// Split `total` items into shards of at most `shard_size`, returning the
/// per-shard counts.
pub fn shard_sizes(total: usize, shard_size: usize) -> Vec<usize> {
    let shard_size = shard_size.max(1);
    let mut out = Vec::with_capacity(total.div_ceil(shard_size));
    let mut left = total;
    while left > 0 {
        let take = left.min(shard_size);
        out.push(take);
        left -= take;
    }
    out
}
