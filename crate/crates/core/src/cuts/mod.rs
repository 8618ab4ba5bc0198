// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Cut-comparison queries over a hidden undirected graph.
//!
//! The oracle answers `sign(w(∂S) - w(∂T))` for nontrivial vertex sets. On
//! top of it sit the structural primitives (majority tests, median sets,
//! neighbor discovery), graph reconstruction, percolation sampling, the
//! sparsifier and min-cut pipeline, and the weighted special cases.

pub mod fixtures;
pub mod flow;
pub mod mincut;
pub mod primitives;
pub mod reconstruct;
pub mod sampling;
pub mod sparsify;
pub mod weighted;

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, parse_rational, Rat};
use crate::oracle::{Operand, QueryCounts, QueryKind, QueryLedger, Sign};

pub use mincut::{min_cut, MinCutConfig, MinCutResult};
pub use primitives::{CutProber, Medians};
pub use reconstruct::reconstruct_graph;
pub use sampling::{sample_percolation, sample_uniform_edges, UniformSample};
pub use sparsify::{build_sparsifier, Sparsifier};
pub use weighted::{ni_mincut_marginal, weighted_mincut_fewclasses};

/// Vertex set over `0..n` as a bit vector.
pub type VertexSet = FixedBitSet;

pub fn vertex_set(n: usize, members: &[usize]) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    for &v in members {
        s.insert(v);
    }
    s
}

pub fn members(s: &VertexSet) -> Vec<usize> {
    s.ones().collect()
}

/// Undirected simple graph, optionally with rational edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiddenGraph {
    n: usize,
    adj: Vec<FixedBitSet>,
    weights: Option<Vec<Vec<Rat>>>,
}

impl HiddenGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
            weights: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Weighted graph; an edge of weight zero is stored as a non-edge.
    pub fn weighted(n: usize, edges: &[(usize, usize, Rat)]) -> Result<Self> {
        let mut g = Self::empty(n);
        let mut w = vec![vec![Rat::zero(); n]; n];
        for (u, v, x) in edges {
            if x < &Rat::zero() {
                return Err(Error::InvalidArgument(format!(
                    "negative weight on {{{u}, {v}}}"
                )));
            }
            if x.is_zero() {
                continue;
            }
            g.add_edge(*u, *v)?;
            w[*u][*v] = x.clone();
            w[*v][*u] = x.clone();
        }
        g.weights = Some(w);
        Ok(g)
    }

    pub fn weighted_i64(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        let e: Vec<_> = edges
            .iter()
            .map(|&(u, v, x)| (u, v, Rat::from_integer(x.into())))
            .collect();
        Self::weighted(n, &e)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge {{{u}, {v}}} outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at {u}")));
        }
        if self.adj[u].contains(v) {
            return Err(Error::InvalidArgument(format!(
                "repeated edge {{{u}, {v}}}"
            )));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                }
            }
        }
        g
    }

    /// Parses `"n m"` followed by `m` lines `u v [w]`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header".into()))?;
        let hv: Vec<usize> = head
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|e| Error::Parse(format!("bad header: {e}")))
            })
            .collect::<Result<_>>()?;
        let [n, m] = hv[..] else {
            return Err(Error::Parse("header must be `n m`".into()));
        };
        let mut plain = Vec::new();
        let mut weighted = Vec::new();
        for line in lines.by_ref().take(m) {
            let t: Vec<&str> = line.split_whitespace().collect();
            let idx = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad vertex `{s}`: {e}")))
            };
            match t[..] {
                [u, v] => plain.push((idx(u)?, idx(v)?)),
                [u, v, w] => weighted.push((idx(u)?, idx(v)?, parse_rational(w)?)),
                _ => return Err(Error::Parse(format!("bad edge line `{line}`"))),
            }
        }
        if plain.len() + weighted.len() != m {
            return Err(Error::Parse(format!("expected {m} edges")));
        }
        if weighted.is_empty() {
            Self::from_edges(n, &plain)
        } else {
            weighted.extend(
                plain
                    .into_iter()
                    .map(|(u, v)| (u, v, Rat::from_integer(1.into()))),
            );
            Self::weighted(n, &weighted)
        }
    }

    pub fn to_text(&self) -> String {
        let e = self.edges();
        let mut s = format!("{} {}\n", self.n, e.len());
        for (u, v) in e {
            match &self.weights {
                Some(w) => s.push_str(&format!("{u} {v} {}\n", format_rational(&w[u][v]))),
                None => s.push_str(&format!("{u} {v}\n")),
            }
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn weight(&self, u: usize, v: usize) -> Rat {
        match &self.weights {
            Some(w) => w[u][v].clone(),
            None => Rat::from_integer((self.has_edge(u, v) as i64).into()),
        }
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.adj[u]
                    .ones()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        self.adj[u].ones().collect()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    /// Number of edges leaving `s`.
    pub fn cut_size(&self, s: &VertexSet) -> u64 {
        let mut total = 0u64;
        for u in s.ones() {
            let sb = s.as_slice();
            total += self.adj[u]
                .as_slice()
                .iter()
                .enumerate()
                .map(|(i, a)| (a & !sb.get(i).copied().unwrap_or(0)).count_ones() as u64)
                .sum::<u64>();
        }
        total
    }

    /// Total weight leaving `s` (edge count when unweighted).
    pub fn cut_weight(&self, s: &VertexSet) -> Rat {
        match &self.weights {
            None => Rat::from_integer(self.cut_size(s).into()),
            Some(w) => {
                let mut total = Rat::zero();
                for u in s.ones() {
                    for v in self.adj[u].ones() {
                        if !s.contains(v) {
                            total += &w[u][v];
                        }
                    }
                }
                total
            }
        }
    }

    pub fn cut_weight_of(&self, s: &[usize]) -> Rat {
        self.cut_weight(&vertex_set(self.n, s))
    }
}

/// Comparison access to the cuts of a hidden graph.
#[derive(Debug, Clone)]
pub struct CutOracle {
    graph: Arc<HiddenGraph>,
    ledger: QueryLedger,
    written: u64,
}

impl CutOracle {
    /// Oracle that counts queries without keeping a transcript.
    pub fn new(graph: HiddenGraph) -> Self {
        Self::shared(Arc::new(graph))
    }

    pub fn shared(graph: Arc<HiddenGraph>) -> Self {
        Self {
            graph,
            ledger: QueryLedger::counting_only(),
            written: 0,
        }
    }

    pub fn with_transcript(mut self) -> Self {
        self.ledger = QueryLedger::new();
        self
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The hidden graph; for test harnesses and reports only.
    pub fn hidden(&self) -> &HiddenGraph {
        &self.graph
    }

    pub fn hidden_arc(&self) -> Arc<HiddenGraph> {
        Arc::clone(&self.graph)
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn counts(&self) -> QueryCounts {
        self.ledger.counts()
    }

    /// Total size of all query sets, the cost of writing them out.
    pub fn elements_written(&self) -> u64 {
        self.written
    }

    fn check(&self, s: &VertexSet) -> Result<()> {
        let k = s.count_ones(..);
        if k == 0 || k >= self.n() || s.ones().any(|v| v >= self.n()) {
            return Err(Error::TrivialCut);
        }
        Ok(())
    }

    fn value(&self, s: &VertexSet) -> Rat {
        self.graph.cut_weight(s)
    }

    /// `sign(w(∂S) - w(∂T))`.
    pub fn compare_cuts(&mut self, s: &VertexSet, t: &VertexSet) -> Result<Sign> {
        self.check(s)?;
        self.check(t)?;
        let ans = if self.graph.is_weighted() {
            Sign::of(&self.value(s), &self.value(t))
        } else {
            Sign::of(&self.graph.cut_size(s), &self.graph.cut_size(t))
        };
        self.written += (s.count_ones(..) + t.count_ones(..)) as u64;
        self.ledger.record(
            QueryKind::Compare,
            Operand::Set(members(s)),
            Operand::Set(members(t)),
            ans,
        );
        Ok(ans)
    }

    /// `sign((w(∂S) - w(∂S')) - (w(∂T) - w(∂T')))`, a stronger query kind.
    pub fn compare_marginals(
        &mut self,
        s: &VertexSet,
        s2: &VertexSet,
        t: &VertexSet,
        t2: &VertexSet,
    ) -> Result<Sign> {
        for x in [s, s2, t, t2] {
            self.check(x)?;
        }
        let a = self.value(s) - self.value(s2);
        let b = self.value(t) - self.value(t2);
        let ans = Sign::of(&a, &b);
        self.written += [s, s2, t, t2]
            .iter()
            .map(|x| x.count_ones(..) as u64)
            .sum::<u64>();
        self.ledger.record(
            QueryKind::Marginal,
            Operand::Difference(members(s), members(s2)),
            Operand::Difference(members(t), members(t2)),
            ans,
        );
        Ok(ans)
    }
}

/// Partition of the vertices into blocks (super-vertices of a contraction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn singletons(n: usize) -> Self {
        Self {
            block_of: (0..n).collect(),
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                if v >= n || block_of[v] != usize::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {v} misplaced in partition"
                    )));
                }
                block_of[v] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidArgument(
                "partition does not cover all vertices".into(),
            ));
        }
        Ok(Self { block_of, blocks })
    }

    /// Groups vertices by a label; blocks are ordered by smallest member.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut seen: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        for (v, l) in labels.iter().enumerate() {
            let b = *seen.entry(*l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
            block_of[v] = b;
        }
        Self { block_of, blocks }
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Original vertices of a set of blocks.
    pub fn expand(&self, blocks: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = blocks
            .iter()
            .flat_map(|&b| self.blocks[b].iter().copied())
            .collect();
        v.sort_unstable();
        v
    }
}

/// The side of a cut that contains vertex 0, sorted.
pub fn normalize_side(n: usize, side: &[usize]) -> Vec<usize> {
    if side.contains(&0) {
        let mut s = side.to_vec();
        s.sort_unstable();
        s
    } else {
        let set = vertex_set(n, side);
        (0..n).filter(|v| !set.contains(*v)).collect()
    }
}
