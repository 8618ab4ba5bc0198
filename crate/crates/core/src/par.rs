// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Data-parallel helpers.
//!
//! Inner loops that are independent per item (cone tests during sieving,
//! determinant evaluations, contraction trials, percolation trials) go through
//! [`map_indexed`]. With the `parallel` feature they run on the rayon pool when
//! the caller asks for [`Execution::Parallel`]; otherwise they run in order on
//! the calling thread. Results are always returned in index order so the two
//! modes produce identical output.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when work will actually be spread over rayon workers.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Evaluates `f(0..len)` and collects the results in index order.
pub fn map_indexed<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Like [`map_indexed`] over a slice.
pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Send + Sync,
{
    map_indexed(exec, items.len(), |i| f(&items[i]))
}
