// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Matroids behind one independence interface, and comparison-based
//! optimization over their bases and common independent sets.
//!
//! Independence tests reveal structure, not weights, so they are counted
//! separately from comparison queries.

pub mod bases;
pub mod intersection;

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{k_subsets, FeasibleFamily};
use crate::separation::LinearMatroid;

pub use bases::{compare_elements, matroid_components, min_weight_basis, BasisResult, Components};
pub use intersection::{
    build_intersection_graph, min_weight_common_independent, modified_bellman_ford,
    IntersectionExchangeGraph, IntersectionResult,
};

/// Independence oracle over the ground set `0..ground_size()`.
pub trait Matroid: Sync {
    fn ground_size(&self) -> usize;

    /// `s` is a strictly increasing element list.
    fn is_independent(&self, s: &[usize]) -> bool;

    /// Rank of the whole matroid, by greedy probing.
    fn rank(&self) -> usize {
        greedy_basis(self).len()
    }
}

/// Adds elements in index order while independence is kept.
pub fn greedy_basis<M: Matroid + ?Sized>(m: &M) -> Vec<usize> {
    let mut b = Vec::new();
    for e in 0..m.ground_size() {
        b.push(e);
        if !m.is_independent(&b) {
            b.pop();
        }
    }
    b
}

/// Sorted copy of `s`.
pub fn sorted(mut s: Vec<usize>) -> Vec<usize> {
    s.sort_unstable();
    s
}

/// Cycle matroid of a multigraph: independent sets are forests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphicMatroid {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn is_independent(&self, s: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &e in s {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

/// Every set of at most `k` elements is independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformMatroid {
    pub n: usize,
    pub k: usize,
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, s: &[usize]) -> bool {
        s.len() <= self.k
    }
}

/// At most `caps[b]` elements from each block `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionMatroid {
    pub block: Vec<usize>,
    pub caps: Vec<usize>,
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.block.len()
    }

    fn is_independent(&self, s: &[usize]) -> bool {
        let mut used = vec![0; self.caps.len()];
        for &e in s {
            used[self.block[e]] += 1;
            if used[self.block[e]] > self.caps[self.block[e]] {
                return false;
            }
        }
        true
    }
}

impl Matroid for LinearMatroid {
    fn ground_size(&self) -> usize {
        self.len()
    }

    fn is_independent(&self, s: &[usize]) -> bool {
        LinearMatroid::is_independent(self, s)
    }
}

/// Any of the shipped matroid kinds, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatroid {
    Graphic(GraphicMatroid),
    Linear(LinearMatroid),
    Uniform(UniformMatroid),
    Partition(PartitionMatroid),
}

impl Matroid for AnyMatroid {
    fn ground_size(&self) -> usize {
        match self {
            AnyMatroid::Graphic(m) => m.ground_size(),
            AnyMatroid::Linear(m) => Matroid::ground_size(m),
            AnyMatroid::Uniform(m) => m.ground_size(),
            AnyMatroid::Partition(m) => m.ground_size(),
        }
    }

    fn is_independent(&self, s: &[usize]) -> bool {
        match self {
            AnyMatroid::Graphic(m) => m.is_independent(s),
            AnyMatroid::Linear(m) => Matroid::is_independent(m, s),
            AnyMatroid::Uniform(m) => m.is_independent(s),
            AnyMatroid::Partition(m) => m.is_independent(s),
        }
    }
}

fn numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|e| Error::Parse(format!("bad number `{t}`: {e}")))
        })
        .collect()
}

impl AnyMatroid {
    /// Parses a matroid file. The first line names the kind:
    /// `graphic` then `n m` and `m` lines `u v`; `linear` then `k n` and
    /// `k` rows; `uniform k n`; `partition` then one line of block labels
    /// and one line of capacities.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matroid file".into()))?;
        let mut words = head.split_whitespace();
        let kind = words.next().unwrap_or_default();
        let rest: Vec<&str> = lines.collect();
        match kind {
            "graphic" => {
                let hv = numbers(
                    rest.first()
                        .ok_or_else(|| Error::Parse("missing `n m`".into()))?,
                )?;
                let [n, m] = hv[..] else {
                    return Err(Error::Parse("expected `n m`".into()));
                };
                let mut edges = Vec::with_capacity(m);
                for l in rest.iter().skip(1).take(m) {
                    let e = numbers(l)?;
                    let [u, v] = e[..] else {
                        return Err(Error::Parse(format!("bad edge `{l}`")));
                    };
                    if u >= n || v >= n {
                        return Err(Error::Parse(format!("edge `{l}` outside 0..{n}")));
                    }
                    edges.push((u, v));
                }
                if edges.len() != m {
                    return Err(Error::Parse(format!("expected {m} edges")));
                }
                Ok(AnyMatroid::Graphic(GraphicMatroid { vertices: n, edges }))
            }
            "linear" => Ok(AnyMatroid::Linear(LinearMatroid::parse(&rest.join("\n"))?)),
            "uniform" => {
                let v = numbers(&words.collect::<Vec<_>>().join(" "))?;
                let [k, n] = v[..] else {
                    return Err(Error::Parse("expected `uniform k n`".into()));
                };
                Ok(AnyMatroid::Uniform(UniformMatroid { n, k }))
            }
            "partition" => {
                let block = numbers(
                    rest.first()
                        .ok_or_else(|| Error::Parse("missing block labels".into()))?,
                )?;
                let caps = numbers(
                    rest.get(1)
                        .ok_or_else(|| Error::Parse("missing capacities".into()))?,
                )?;
                if block.iter().any(|&b| b >= caps.len()) {
                    return Err(Error::Parse("block label without a capacity".into()));
                }
                Ok(AnyMatroid::Partition(PartitionMatroid { block, caps }))
            }
            other => Err(Error::Parse(format!("unknown matroid kind `{other}`"))),
        }
    }
}

/// Counts independence tests made through it.
pub struct Counted<'a, M: ?Sized> {
    inner: &'a M,
    calls: AtomicU64,
}

impl<'a, M: Matroid + ?Sized> Counted<'a, M> {
    pub fn new(inner: &'a M) -> Self {
        Self {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

impl<M: Matroid + ?Sized> Matroid for Counted<'_, M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, s: &[usize]) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.is_independent(s)
    }
}

/// The bases of a matroid as a feasible family.
pub struct Bases<M> {
    pub matroid: M,
    rank: usize,
}

impl<M: Matroid> Bases<M> {
    pub fn new(matroid: M) -> Self {
        let rank = matroid.rank();
        Self { matroid, rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl<M: Matroid> FeasibleFamily for Bases<M> {
    fn ground_size(&self) -> usize {
        self.matroid.ground_size()
    }

    fn contains(&self, s: &[usize]) -> bool {
        s.len() == self.rank && s.windows(2).all(|w| w[0] < w[1]) && self.matroid.is_independent(s)
    }

    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        (self.ground_size() <= 20).then(|| {
            k_subsets(self.ground_size(), self.rank)
                .into_iter()
                .filter(|s| self.matroid.is_independent(s))
                .collect()
        })
    }
}

/// Sets independent in both matroids, as a feasible family.
pub struct CommonIndependent<M1, M2> {
    pub m1: M1,
    pub m2: M2,
}

impl<M1: Matroid, M2: Matroid> FeasibleFamily for CommonIndependent<M1, M2> {
    fn ground_size(&self) -> usize {
        self.m1.ground_size()
    }

    fn contains(&self, s: &[usize]) -> bool {
        s.windows(2).all(|w| w[0] < w[1]) && self.m1.is_independent(s) && self.m2.is_independent(s)
    }

    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.ground_size();
        (n <= 20).then(|| {
            (0u64..1 << n)
                .map(|m| crate::oracle::mask_to_set(m, n))
                .filter(|s| self.contains(s))
                .collect()
        })
    }
}

/// The two partition matroids of bipartite matching: edge `i` joins left
/// vertex `edges[i].0` and right vertex `edges[i].1`.
pub fn bipartite_matroids(
    left: usize,
    right: usize,
    edges: &[(usize, usize)],
) -> (PartitionMatroid, PartitionMatroid) {
    (
        PartitionMatroid {
            block: edges.iter().map(|e| e.0).collect(),
            caps: vec![1; left],
        },
        PartitionMatroid {
            block: edges.iter().map(|e| e.1).collect(),
            caps: vec![1; right],
        },
    )
}
