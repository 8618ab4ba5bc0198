// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Shortest s-t paths when the only access to arc lengths is comparing the
//! lengths of two s-t walks.
//!
//! Bellman-Ford keeps a walk `s_v` from `s` to every vertex `v`. Two
//! candidates for `s_v` are s-v walks, not s-t walks, so both are extended by
//! the same fixed v-t walk `t_v` before comparing; the shared suffix cancels.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, Rat};
use crate::oracle::{Operand, QueryCounts, QueryKind, QueryLedger, Sign};

/// Directed graph whose arc lengths are hidden. At most one arc per ordered
/// pair; self-loops are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    length: Vec<Vec<Option<Rat>>>,
}

impl HiddenDigraph {
    pub fn new(n: usize, arcs: &[(usize, usize, Rat)]) -> Result<Self> {
        let mut length = vec![vec![None; n]; n];
        let mut list = Vec::with_capacity(arcs.len());
        for (u, v, l) in arcs {
            if *u >= n || *v >= n {
                return Err(Error::InvalidArgument(format!(
                    "arc ({u}, {v}) outside 0..{n}"
                )));
            }
            if length[*u][*v].replace(l.clone()).is_some() {
                return Err(Error::InvalidArgument(format!("parallel arc ({u}, {v})")));
            }
            list.push((*u, *v));
        }
        Ok(Self {
            n,
            arcs: list,
            length,
        })
    }

    /// Reads `n m` and then `m` lines `u v len`.
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
        let mut arcs = Vec::with_capacity(m);
        for line in lines.take(m) {
            let t: Vec<&str> = line.split_whitespace().collect();
            let idx = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad vertex `{s}`: {e}")))
            };
            let [u, v, l] = t[..] else {
                return Err(Error::Parse(format!("arc line `{line}` must be `u v len`")));
            };
            arcs.push((idx(u)?, idx(v)?, parse_rational(l)?));
        }
        if arcs.len() != m {
            return Err(Error::Parse(format!("expected {m} arcs")));
        }
        Self::new(n, &arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The public structure: arcs without lengths.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.length[u][v].is_some()
    }

    pub fn length(&self, u: usize, v: usize) -> Option<&Rat> {
        self.length.get(u)?.get(v)?.as_ref()
    }

    /// Length of a walk given as a vertex sequence, if every step is an arc.
    pub fn walk_length(&self, walk: &[usize]) -> Option<Rat> {
        let mut total = Rat::from_integer(0.into());
        for w in walk.windows(2) {
            total += self.length(w[0], w[1])?;
        }
        Some(total)
    }
}

/// Answers `sign(ℓ(W1) - ℓ(W2))` for s-t walks `W1`, `W2`.
#[derive(Debug, Clone)]
pub struct WalkOracle {
    graph: HiddenDigraph,
    s: usize,
    t: usize,
    ledger: QueryLedger,
}

impl WalkOracle {
    pub fn new(graph: HiddenDigraph, s: usize, t: usize) -> Result<Self> {
        if s >= graph.n || t >= graph.n {
            return Err(Error::InvalidArgument(format!(
                "terminals ({s}, {t}) outside 0..{}",
                graph.n
            )));
        }
        Ok(Self {
            graph,
            s,
            t,
            ledger: QueryLedger::new(),
        })
    }

    pub fn with_ledger(mut self, ledger: QueryLedger) -> Self {
        self.ledger = ledger;
        self
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn source(&self) -> usize {
        self.s
    }

    pub fn target(&self) -> usize {
        self.t
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        self.graph.arcs()
    }

    pub fn hidden(&self) -> &HiddenDigraph {
        &self.graph
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn counts(&self) -> QueryCounts {
        self.ledger.counts()
    }

    /// Checks that `walk` runs from `s` to `t` over existing arcs.
    pub fn validate(&self, walk: &[usize]) -> Result<Rat> {
        if walk.first() != Some(&self.s) || walk.last() != Some(&self.t) {
            return Err(Error::InvalidWalk(format!(
                "{walk:?} does not run from {} to {}",
                self.s, self.t
            )));
        }
        self.graph
            .walk_length(walk)
            .ok_or_else(|| Error::InvalidWalk(format!("{walk:?} uses a missing arc")))
    }

    pub fn compare_walks(&mut self, w1: &[usize], w2: &[usize]) -> Result<Sign> {
        let a = self.validate(w1)?;
        let b = self.validate(w2)?;
        let ans = Sign::of(&a, &b);
        self.ledger.record(
            QueryKind::Compare,
            Operand::Set(w1.to_vec()),
            Operand::Set(w2.to_vec()),
            ans,
        );
        Ok(ans)
    }
}

/// A negative cycle with its certificate: `looped` is `walk` with the cycle
/// spliced in once, and compares strictly shorter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeCycle {
    /// Closed vertex sequence, first vertex repeated at the end.
    pub cycle: Vec<usize>,
    pub walk: Vec<usize>,
    pub looped: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathOutcome {
    Path(Vec<usize>),
    NegativeCycle(NegativeCycle),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortestPathResult {
    pub outcome: PathOutcome,
    pub comparisons: u64,
    /// Vertices left after dropping those on no s-t walk.
    pub kept: Vec<usize>,
    /// `tables[k][v]` is the walk `s_v` after `k` rounds, if any.
    pub tables: Vec<Vec<Option<Vec<usize>>>>,
}

fn bfs(n: usize, adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; n];
    prev[root] = root;
    let mut q = VecDeque::from([root]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                q.push_back(v);
            }
        }
    }
    prev
}

/// Shortest s-t path, or a negative cycle on some s-t walk, using `O(n³)`
/// walk comparisons.
pub fn shortest_path_walk_comparisons(oracle: &mut WalkOracle) -> Result<ShortestPathResult> {
    let (n, s, t) = (oracle.n(), oracle.source(), oracle.target());
    let start = oracle.counts().compare;
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for &(u, v) in oracle.arcs() {
        out[u].push(v);
        inc[v].push(u);
    }
    let from_s = bfs(n, &out, s);
    // `to_t[v]` is the next vertex on a BFS v-t walk.
    let to_t = bfs(n, &inc, t);
    if from_s[t] == usize::MAX {
        return Err(Error::Unreachable);
    }
    let kept: Vec<usize> = (0..n)
        .filter(|&v| from_s[v] != usize::MAX && to_t[v] != usize::MAX)
        .collect();
    let alive = |v: usize| from_s[v] != usize::MAX && to_t[v] != usize::MAX;
    let tail: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut w = vec![v];
            if alive(v) {
                let mut x = v;
                while x != t {
                    x = to_t[x];
                    w.push(x);
                }
            }
            w
        })
        .collect();
    let through = |head: &[usize], v: usize| -> Vec<usize> {
        let mut w = head.to_vec();
        w.extend_from_slice(&tail[v][1..]);
        w
    };

    let mut table: Vec<Option<Vec<usize>>> = vec![None; n];
    table[s] = Some(vec![s]);
    let mut pred = vec![usize::MAX; n];
    let mut tables = vec![table.clone()];
    let rounds = kept.len();
    let mut improved_last = None;
    // Only walks that changed in the previous round yield new candidates.
    let mut changed = vec![false; n];
    changed[s] = true;
    for round in 1..=rounds {
        let mut next = table.clone();
        let mut improved = None;
        for &v in &kept {
            for &u in inc[v].iter().filter(|&&u| alive(u) && changed[u]) {
                let Some(su) = &table[u] else { continue };
                let mut cand = su.clone();
                cand.push(v);
                let better = match &next[v] {
                    None => true,
                    Some(cur) => {
                        oracle.compare_walks(&through(&cand, v), &through(cur, v))? == Sign::Less
                    }
                };
                if better {
                    next[v] = Some(cand);
                    pred[v] = u;
                    improved = Some(v);
                }
            }
        }
        changed = (0..n).map(|v| next[v] != table[v]).collect();
        table = next;
        tables.push(table.clone());
        if round == rounds {
            improved_last = improved;
        } else if improved.is_none() {
            break;
        }
    }

    let outcome = match improved_last {
        None => PathOutcome::Path(table[t].clone().expect("t is reachable")),
        Some(v) => {
            // `rounds` steps back along predecessors land on a cycle.
            let back = |x: usize| match pred[x] {
                usize::MAX => Err(Error::InvalidWalk(format!(
                    "predecessor chain of {v} ends at {x}"
                ))),
                p => Ok(p),
            };
            let mut x = v;
            for _ in 0..rounds {
                x = back(x)?;
            }
            let mut cycle = vec![x];
            let mut y = back(x)?;
            while y != x {
                cycle.push(y);
                y = back(y)?;
            }
            cycle.push(x);
            cycle.reverse();
            let head = table[x].clone().expect("cycle vertices carry walks");
            let walk = through(&head, x);
            let mut looped = head;
            looped.extend_from_slice(&cycle[1..]);
            let looped = through(&looped, x);
            if oracle.compare_walks(&looped, &walk)? != Sign::Less {
                return Err(Error::InvalidWalk("cycle certificate failed".into()));
            }
            PathOutcome::NegativeCycle(NegativeCycle {
                cycle,
                walk,
                looped,
            })
        }
    };
    Ok(ShortestPathResult {
        outcome,
        comparisons: oracle.counts().compare - start,
        kept,
        tables,
    })
}
