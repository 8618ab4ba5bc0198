// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Global minimum cut of an unweighted graph from cut comparisons.
//!
//! 1. The lightest singleton cut is found by comparisons.
//! 2. A sparsifier `H` is built.
//! 3. Every edge of `H` that crosses no cut of `H` within `(1 + 3ε)` of its
//!    minimum is contracted. The minimum cut of `G` is such a cut of `H`,
//!    so it survives.
//! 4. The edges between the remaining super-vertices are learned, the
//!    contracted graph is solved exactly, and the better of its cut and the
//!    singleton is kept by one comparison.
//!
//! An edge `{x, y}` crosses a cut of weight at most `K` exactly when the
//! minimum `x`-`y` cut is at most `K`, so step 3 reads the pairwise
//! connectivities off a Gomory–Hu tree of `H`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::flow::{gomory_hu, pairwise_connectivity, stoer_wagner, WeightedGraph};
use super::{
    build_sparsifier, normalize_side, sample_percolation, vertex_set, CutProber, VertexPartition,
};
use crate::error::{Error, Result};
use crate::oracle::{QueryCounts, Sign};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinCutConfig {
    pub eps: f64,
    pub seed: u64,
}

impl Default for MinCutConfig {
    fn default() -> Self {
        Self { eps: 0.1, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinCutResult {
    /// Side of the cut containing vertex 0.
    pub side: Vec<usize>,
    pub best_singleton: usize,
    pub sparsifier_edges: usize,
    pub supervertices: usize,
    pub learned_edges: usize,
    pub queries: QueryCounts,
}

fn smallest_by_comparison(p: &mut CutProber, sides: Vec<Vec<usize>>) -> Result<Vec<usize>> {
    let n = p.n();
    let mut it = sides.into_iter();
    let mut best = it.next().ok_or(Error::TrivialCut)?;
    for s in it {
        if p.oracle_mut()
            .compare_cuts(&vertex_set(n, &s), &vertex_set(n, &best))?
            == Sign::Less
        {
            best = s;
        }
    }
    Ok(best)
}

pub fn min_cut(p: &mut CutProber, cfg: MinCutConfig) -> Result<MinCutResult> {
    let n = p.n();
    if n < 2 {
        return Err(Error::TooFewVertices {
            needed: 2,
            found: n,
        });
    }
    let mut result = MinCutResult {
        side: Vec::new(),
        best_singleton: 0,
        sparsifier_edges: 0,
        supervertices: n,
        learned_edges: 0,
        queries: QueryCounts::default(),
    };
    if n <= 4 {
        // Every cut is compared directly.
        let sides = (1..1u32 << (n - 1)).map(|m| {
            let mut s = vec![0];
            s.extend((1..n).filter(|&v| (m >> (v - 1)) & 1 == 0));
            s
        });
        let sides: Vec<Vec<usize>> = sides.filter(|s| s.len() < n).collect();
        result.side = smallest_by_comparison(p, sides)?;
        result.queries = p.oracle().counts();
        return Ok(result);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let single = smallest_by_comparison(p, (0..n).map(|v| vec![v]).collect())?;
    result.best_singleton = single[0];

    let sp = build_sparsifier(p, cfg.eps, &mut rng)?;
    result.sparsifier_edges = sp.edges.len();
    let h = sp.graph();
    let (lam_h, _) = stoer_wagner(&h).expect("n >= 2");
    let limit = (1.0 + 3.0 * cfg.eps) * lam_h + TOL;
    let lam = pairwise_connectivity(&gomory_hu(&h));
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while l[r] != r {
            r = l[r];
        }
        l[x] = r;
        r
    }
    for &(u, v, _) in &h.edges {
        if lam[u][v] > limit {
            let (a, b) = (find(&mut label, u), find(&mut label, v));
            label[a] = b;
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut label, v)).collect();
    let part = VertexPartition::from_labels(&roots);
    result.supervertices = part.len();

    let mut candidates = vec![single];
    if part.len() >= 2 {
        let learned = sample_percolation(p, &part, 1.0, None, &mut rng)?;
        result.learned_edges = learned.len();
        let mut g = WeightedGraph::new(part.len());
        for &(u, v) in &learned {
            g.add(part.block_of(u), part.block_of(v), 1.0);
        }
        let (_, blocks) = stoer_wagner(&g).expect("two or more super-vertices");
        candidates.push(part.expand(&blocks));
    }
    let best = smallest_by_comparison(p, candidates)?;
    result.side = normalize_side(n, &best);
    result.queries = p.oracle().counts();
    Ok(result)
}
