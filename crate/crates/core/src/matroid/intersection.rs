// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Minimum-weight common independent set from set comparisons.
//!
//! Starting from `Y = ∅`, each phase augments along a shortest path of the
//! exchange graph, where shortest means the lightest `Y Δ P` and then the
//! fewest arcs. Path weights are never read: two candidate paths are ranked
//! by comparing the two sets they lead to. Every phase yields a minimum set
//! of its size, and the lightest of those is the answer.

use serde::{Deserialize, Serialize};

use super::{sorted, Counted, Matroid};
use crate::error::{Error, Result};
use crate::oracle::{FeasibleFamily, SetOracle, Sign};

/// Exchange graph of a common independent set `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionExchangeGraph {
    pub y: Vec<usize>,
    pub in_y: Vec<bool>,
    /// `Y + x` is independent in the first matroid.
    pub sources: Vec<bool>,
    /// `Y + x` is independent in the second matroid.
    pub sinks: Vec<bool>,
    /// `first[y][x]`: arc `y -> x`, `Y - y + x` independent in the first matroid.
    pub first: Vec<Vec<bool>>,
    /// `second[x][y]`: arc `x -> y`, `Y - y + x` independent in the second matroid.
    pub second: Vec<Vec<bool>>,
}

impl IntersectionExchangeGraph {
    pub fn n(&self) -> usize {
        self.in_y.len()
    }

    /// `Y Δ path`.
    pub fn apply(&self, path: &[usize]) -> Vec<usize> {
        sorted(
            self.y
                .iter()
                .copied()
                .filter(|e| !path.contains(e))
                .chain(path.iter().copied().filter(|&e| !self.in_y[e]))
                .collect(),
        )
    }
}

pub fn build_intersection_graph<M1: Matroid + ?Sized, M2: Matroid + ?Sized>(
    m1: &M1,
    m2: &M2,
    y: &[usize],
) -> IntersectionExchangeGraph {
    let n = m1.ground_size();
    let mut in_y = vec![false; n];
    for &e in y {
        in_y[e] = true;
    }
    let plus = |x: usize| sorted(y.iter().copied().chain([x]).collect());
    let swap =
        |out: usize, x: usize| sorted(y.iter().copied().filter(|&e| e != out).chain([x]).collect());
    let mut g = IntersectionExchangeGraph {
        y: y.to_vec(),
        in_y,
        sources: vec![false; n],
        sinks: vec![false; n],
        first: vec![vec![false; n]; n],
        second: vec![vec![false; n]; n],
    };
    for x in (0..n).filter(|&x| !g.in_y[x]) {
        let s = plus(x);
        g.sources[x] = m1.is_independent(&s);
        g.sinks[x] = m2.is_independent(&s);
        for &out in y {
            let s = swap(out, x);
            g.first[out][x] = m1.is_independent(&s);
            g.second[x][out] = m2.is_independent(&s);
        }
    }
    g
}

fn common<M1: Matroid + ?Sized, M2: Matroid + ?Sized>(m1: &M1, m2: &M2, s: &[usize]) -> bool {
    m1.is_independent(s) && m2.is_independent(s)
}

/// Keeps the better of `best` and `cand` (path, set, arc count): lighter set
/// first, then fewer arcs, then the earlier one.
fn keep_better<F: FeasibleFamily>(
    oracle: &mut SetOracle<F>,
    best: &mut Option<(Vec<usize>, Vec<usize>)>,
    cand: Vec<usize>,
    set: Vec<usize>,
) -> Result<bool> {
    let better = match best {
        None => true,
        Some((path, cur)) => match oracle.compare(&set, cur)? {
            Sign::Less => true,
            Sign::Equal => cand.len() < path.len(),
            Sign::Greater => false,
        },
    };
    if better {
        *best = Some((cand, set));
    }
    Ok(better)
}

/// Shortest augmenting path for `g`, or `None` when `Y` is maximum.
///
/// Labels live on the elements of `Y`: the lightest path from a source to
/// `y` whose exchange keeps `Y` common independent. Rounds relax each label
/// through one more non-`Y` element until nothing changes.
pub fn modified_bellman_ford<M1: Matroid + ?Sized, M2: Matroid + ?Sized, F: FeasibleFamily>(
    g: &IntersectionExchangeGraph,
    m1: &M1,
    m2: &M2,
    oracle: &mut SetOracle<F>,
) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let outside: Vec<usize> = (0..n).filter(|&x| !g.in_y[x]).collect();
    let mut label: Vec<Option<(Vec<usize>, Vec<usize>)>> = vec![None; n];
    for &y in &g.y {
        for &x in outside.iter().filter(|&&x| g.sources[x] && g.second[x][y]) {
            let path = vec![x, y];
            let set = g.apply(&path);
            if common(m1, m2, &set) {
                keep_better(oracle, &mut label[y], path, set)?;
            }
        }
    }
    for _ in 0..g.y.len() {
        let mut changed = false;
        for &y in &g.y {
            for &z in &g.y {
                let Some((pz, _)) = label[z].clone() else {
                    continue;
                };
                if pz.contains(&y) {
                    continue;
                }
                for &x in &outside {
                    if !g.first[z][x] || !g.second[x][y] || pz.contains(&x) {
                        continue;
                    }
                    let mut path = pz.clone();
                    path.extend([x, y]);
                    let set = g.apply(&path);
                    if common(m1, m2, &set) {
                        changed |= keep_better(oracle, &mut label[y], path, set)?;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for &x in outside.iter().filter(|&&x| g.sources[x] && g.sinks[x]) {
        let set = g.apply(&[x]);
        keep_better(oracle, &mut best, vec![x], set)?;
    }
    for &z in &g.y {
        let Some((pz, _)) = &label[z] else { continue };
        for &x in outside
            .iter()
            .filter(|&&x| g.sinks[x] && g.first[z][x] && !pz.contains(&x))
        {
            let mut path = pz.clone();
            path.push(x);
            let set = g.apply(&path);
            if common(m1, m2, &set) {
                keep_better(oracle, &mut best, path, set)?;
            }
        }
    }
    Ok(best.map(|b| b.0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionResult {
    pub best: Vec<usize>,
    /// `extremes[t]` is a minimum common independent set of size `t`.
    pub extremes: Vec<Vec<usize>>,
    pub comparisons: u64,
    pub independence_tests: u64,
    /// Comparisons spent in each augmentation phase.
    pub phase_comparisons: Vec<u64>,
}

/// Minimum-weight common independent set. `oracle` compares common
/// independent sets of `m1` and `m2`.
pub fn min_weight_common_independent<
    M1: Matroid + ?Sized,
    M2: Matroid + ?Sized,
    F: FeasibleFamily,
>(
    m1: &M1,
    m2: &M2,
    oracle: &mut SetOracle<F>,
) -> Result<IntersectionResult> {
    if m1.ground_size() != m2.ground_size() {
        return Err(Error::InvalidArgument(
            "matroids on different ground sets".into(),
        ));
    }
    let (c1, c2) = (Counted::new(m1), Counted::new(m2));
    let start = oracle.counts().compare;
    let mut extremes = vec![Vec::new()];
    let mut phase_comparisons = Vec::new();
    loop {
        let before = oracle.counts().compare;
        let g = build_intersection_graph(&c1, &c2, extremes.last().expect("nonempty"));
        let path = modified_bellman_ford(&g, &c1, &c2, oracle)?;
        phase_comparisons.push(oracle.counts().compare - before);
        let Some(path) = path else { break };
        let next = g.apply(&path);
        if !common(&c1, &c2, &next) {
            return Err(Error::NotCommonIndependent);
        }
        extremes.push(next);
    }
    let mut best = 0;
    for t in 1..extremes.len() {
        if oracle.compare(&extremes[t], &extremes[best])? == Sign::Less {
            best = t;
        }
    }
    Ok(IntersectionResult {
        best: extremes[best].clone(),
        extremes,
        comparisons: oracle.counts().compare - start,
        independence_tests: c1.calls() + c2.calls(),
        phase_comparisons,
    })
}
