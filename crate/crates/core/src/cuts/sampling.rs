// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Edge sampling with cut queries: percolation of a contracted graph and
//! uniform edge samples.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{CutProber, VertexPartition};
use crate::error::{Error, Result};

/// Keeps every edge of `G` between distinct blocks of `partition` with
/// probability `p`, independently. With `within` set, only edges between the
/// listed blocks are considered (the induced contracted subgraph).
///
/// Each vertex `u` picks every vertex outside its block with probability
/// `q = 1 - sqrt(1 - p)` and extracts all its neighbors among the picks; an
/// edge survives when either endpoint picked the other, which happens with
/// probability `1 - (1 - q)^2 = p`.
pub fn sample_percolation<R: Rng + ?Sized>(
    prober: &mut CutProber,
    partition: &VertexPartition,
    p: f64,
    within: Option<&[usize]>,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    let n = prober.n();
    let allowed: Vec<bool> = match within {
        Some(bs) => {
            let mut a = vec![false; n];
            for v in partition.expand(bs) {
                a[v] = true;
            }
            a
        }
        None => vec![true; n],
    };
    let q = 1.0 - (1.0 - p).sqrt();
    let mut edges = Vec::new();
    for u in (0..n).filter(|&u| allowed[u]) {
        let bu = partition.block_of(u);
        let candidates = (0..n).filter(|&v| allowed[v] && partition.block_of(v) != bu);
        // At p = 1 every edge is kept; asking from the lower endpoint suffices.
        let t: Vec<usize> = if p >= 1.0 {
            candidates.filter(|&v| v > u).collect()
        } else {
            candidates.filter(|_| rng.gen_bool(q)).collect()
        };
        if t.is_empty() {
            continue;
        }
        for v in prober.extract_edges(u, &t, usize::MAX)? {
            edges.push((u.min(v), u.max(v)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}

/// A uniformly random set of edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformSample {
    pub edges: Vec<(usize, usize)>,
    /// Percolation rounds used, each at twice the previous probability.
    pub rounds: usize,
    /// Probability of the last round.
    pub final_p: f64,
    /// Bound on the chance the doubling overshoots its nominal round.
    pub failure_bound: f64,
}

/// `k` edges chosen uniformly without replacement.
///
/// Percolation at `p = 2^t / n^2` is repeated with doubling `t` until at
/// least `k` edges appear; conditioned on its size, a percolation sample is
/// a uniform edge subset, so a uniform `k`-subset of it is uniform in `E`.
pub fn sample_uniform_edges<R: Rng + ?Sized>(
    prober: &mut CutProber,
    k: usize,
    rng: &mut R,
) -> Result<UniformSample> {
    let n = prober.n();
    if k == 0 {
        return Ok(UniformSample {
            edges: Vec::new(),
            rounds: 0,
            final_p: 0.0,
            failure_bound: 0.0,
        });
    }
    let part = VertexPartition::singletons(n);
    let mut p = 1.0 / ((n * n).max(1) as f64);
    let mut rounds = 0;
    loop {
        p = p.min(1.0);
        rounds += 1;
        let got = sample_percolation(prober, &part, p, None, rng)?;
        if got.len() >= k {
            let mut edges: Vec<(usize, usize)> = sample(rng, got.len(), k)
                .into_iter()
                .map(|i| got[i])
                .collect();
            edges.sort_unstable();
            return Ok(UniformSample {
                edges,
                rounds,
                final_p: p,
                failure_bound: (-(k as f64) / 4.0).exp(),
            });
        }
        if p >= 1.0 {
            return Err(Error::NotEnoughEdges {
                requested: k,
                available: got.len(),
            });
        }
        p *= 2.0;
    }
}
