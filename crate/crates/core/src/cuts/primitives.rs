// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Structural primitives: majority tests, tipping points, isolation tests,
//! median sets and neighbor discovery.
//!
//! For `u ∉ S`, `|∂S| - |∂(S + u)| = 2 c(S) - d(u)` where `c(S)` counts the
//! neighbors of `u` in `S`, so one cut comparison tells whether `S` holds at
//! least half of `u`'s neighbors. A median set holds just under half; adding
//! one vertex to it tips the balance exactly when that vertex is a neighbor.

use super::{members, vertex_set, CutOracle, VertexSet};
use crate::error::{Error, Result};
use crate::oracle::Sign;

/// Two median sets of a non-isolated vertex `u`. Each holds `c` neighbors
/// of `u` with `ceil(d/2) - 1 <= c < d/2`, and their union misses at least
/// one vertex of `V - u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Medians {
    pub minus: VertexSet,
    pub plus: VertexSet,
}

/// A cut oracle plus the per-vertex median sets learned so far.
///
/// Median sets depend only on the hidden graph, so they are computed once
/// per vertex and reused by every later search.
#[derive(Debug, Clone)]
pub struct CutProber {
    oracle: CutOracle,
    medians: Vec<Option<Option<Medians>>>,
}

impl CutProber {
    pub fn new(oracle: CutOracle) -> Self {
        let n = oracle.n();
        Self {
            oracle,
            medians: vec![None; n],
        }
    }

    pub fn n(&self) -> usize {
        self.oracle.n()
    }

    pub fn oracle(&self) -> &CutOracle {
        &self.oracle
    }

    pub fn oracle_mut(&mut self) -> &mut CutOracle {
        &mut self.oracle
    }

    pub fn into_oracle(self) -> CutOracle {
        self.oracle
    }

    fn need(&self, k: usize) -> Result<()> {
        if self.n() < k {
            return Err(Error::TooFewVertices {
                needed: k,
                found: self.n(),
            });
        }
        Ok(())
    }

    /// `sign(c(S) - d(u)/2)`, from comparing `∂S` with `∂(S + u)`.
    pub fn majority_test(&mut self, u: usize, s: &VertexSet) -> Result<Sign> {
        if s.contains(u) {
            return Err(Error::InvalidArgument(format!(
                "vertex {u} already in the set"
            )));
        }
        let mut su = s.clone();
        su.grow(self.n());
        su.insert(u);
        self.oracle.compare_cuts(s, &su)
    }

    pub fn majority_of(&mut self, u: usize, s: &[usize]) -> Result<Sign> {
        let s = vertex_set(self.n(), s);
        self.majority_test(u, &s)
    }

    /// First index `i` in `1..=seq.len()` at which the majority sign of
    /// `base + seq[..i]` exceeds that of `base`.
    pub fn tipping_point(&mut self, u: usize, base: &[usize], seq: &[usize]) -> Result<usize> {
        let n = self.n();
        let chain = |i: usize| -> VertexSet {
            let mut s = vertex_set(n, base);
            seq[..i].iter().for_each(|&v| s.insert(v));
            s
        };
        let s0 = self.majority_test(u, &chain(0))?;
        let st = self.majority_test(u, &chain(seq.len()))?;
        if st <= s0 {
            return Err(Error::NoSignChange);
        }
        let (mut lo, mut hi) = (0, seq.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.majority_test(u, &chain(mid))? > s0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Whether `u` has no neighbors: `∂S` and `∂(S + u)` agree for
    /// `S = {v}, {w}, {v, w}` only when `d(u) = 0`.
    pub fn is_isolated(&mut self, u: usize) -> Result<bool> {
        self.need(4)?;
        let n = self.n();
        let mut others = (0..n).filter(|&x| x != u);
        let (v, w) = (others.next().unwrap(), others.next().unwrap());
        for s in [vec![v], vec![w], vec![v, w]] {
            if self.majority_test(u, &vertex_set(n, &s))? != Sign::Equal {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Median sets of `u` along the ordering of `V - u` by label, or `None`
    /// when `u` is isolated.
    pub fn medians(&mut self, u: usize) -> Result<Option<Medians>> {
        if let Some(m) = &self.medians[u] {
            return Ok(m.clone());
        }
        let m = if self.is_isolated(u)? {
            None
        } else {
            Some(self.compute_medians(u)?)
        };
        self.medians[u] = Some(m.clone());
        Ok(m)
    }

    fn compute_medians(&mut self, u: usize) -> Result<Medians> {
        let n = self.n();
        let vs: Vec<usize> = (0..n).filter(|&x| x != u).collect();
        let last = vs.len() - 1;
        let first = self.majority_of(u, &vs[..1])?;
        if first == Sign::Greater {
            // The first vertex is the only neighbor.
            return Ok(Medians {
                minus: vertex_set(n, &[]),
                plus: vertex_set(n, &vs[1..]),
            });
        }
        let tail = self.majority_of(u, &vs[last..])?;
        if tail == Sign::Greater {
            return Ok(Medians {
                minus: vertex_set(n, &vs[..last]),
                plus: vertex_set(n, &[]),
            });
        }
        // Prefix chain: length 1 is below half, length `last` is not.
        let minus = if first == Sign::Equal {
            vertex_set(n, &[])
        } else {
            let (mut lo, mut hi) = (1, last);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if self.majority_of(u, &vs[..mid])? == Sign::Less {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            vertex_set(n, &vs[..lo])
        };
        let plus = if tail == Sign::Equal {
            vertex_set(n, &[])
        } else {
            let (mut lo, mut hi) = (1, last);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if self.majority_of(u, &vs[vs.len() - mid..])? == Sign::Less {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            vertex_set(n, &vs[vs.len() - lo..])
        };
        Ok(Medians { minus, plus })
    }

    /// Whether `base ∪ extra` holds at least half of `u`'s neighbors, given
    /// that `base` holds fewer. The whole of `V - u` needs no query.
    fn reaches_half(&mut self, u: usize, base: &VertexSet, extra: &[usize]) -> Result<bool> {
        let mut s = base.clone();
        extra.iter().for_each(|&v| s.insert(v));
        if s.count_ones(..) + 1 == self.n() {
            return Ok(true);
        }
        Ok(self.majority_test(u, &s)? != Sign::Less)
    }

    /// Splits `t` (order kept) into the part searched from `plus` and the
    /// part inside `plus`, searched from `minus`.
    fn split<'a>(med: &'a Medians, u: usize, t: &[usize]) -> [(&'a VertexSet, Vec<usize>); 2] {
        let outside: Vec<usize> = t
            .iter()
            .copied()
            .filter(|&v| v != u && !med.plus.contains(v))
            .collect();
        let inside: Vec<usize> = t
            .iter()
            .copied()
            .filter(|&v| v != u && med.plus.contains(v))
            .collect();
        [(&med.plus, outside), (&med.minus, inside)]
    }

    /// Neighbors of `u` within `a`, one query per candidate.
    pub fn neighbors_in_set(&mut self, u: usize, a: &[usize]) -> Result<Vec<usize>> {
        let Some(med) = self.medians(u)? else {
            return Ok(Vec::new());
        };
        let n = self.n();
        let plus_size = med.plus.count_ones(..);
        let mut out = Vec::new();
        for &v in a {
            if v == u {
                continue;
            }
            let base = if !med.plus.contains(v) && plus_size + 2 < n {
                &med.plus
            } else {
                &med.minus
            };
            debug_assert!(!base.contains(v));
            if self.reaches_half(u, base, &[v])? {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Index of the first neighbor of `u` in `seq`, searching up from `base`.
    fn first_from(&mut self, u: usize, base: &VertexSet, seq: &[usize]) -> Result<Option<usize>> {
        if seq.is_empty() || !self.reaches_half(u, base, seq)? {
            return Ok(None);
        }
        let (mut lo, mut hi) = (0, seq.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.reaches_half(u, base, &seq[..mid])? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(Some(hi - 1))
    }

    /// The first vertex of the ordered set `t` adjacent to `u`.
    pub fn first_neighbor(&mut self, u: usize, t: &[usize]) -> Result<Option<usize>> {
        let Some(med) = self.medians(u)? else {
            return Ok(None);
        };
        let pos = |v: usize| t.iter().position(|&x| x == v).unwrap();
        let mut best: Option<usize> = None;
        for (base, part) in Self::split(&med, u, t) {
            if let Some(i) = self.first_from(u, base, &part)? {
                let v = part[i];
                if best.map_or(true, |b| pos(v) < pos(b)) {
                    best = Some(v);
                }
            }
        }
        Ok(best)
    }

    /// Up to `k` neighbors of `u` in `t`, by repeated doubling and binary
    /// search; `O(log n)` queries per neighbor found.
    pub fn extract_edges(&mut self, u: usize, t: &[usize], k: usize) -> Result<Vec<usize>> {
        let mut found = Vec::new();
        if k == 0 {
            return Ok(found);
        }
        let Some(med) = self.medians(u)? else {
            return Ok(found);
        };
        for (base, part) in Self::split(&med, u, t) {
            let mut rest = &part[..];
            while found.len() < k && !rest.is_empty() {
                // Doubling: find a prefix that reaches half.
                let (mut lo, mut len) = (0, 1);
                let hi = loop {
                    let l = len.min(rest.len());
                    if self.reaches_half(u, base, &rest[..l])? {
                        break Some(l);
                    }
                    if l == rest.len() {
                        break None;
                    }
                    lo = l;
                    len *= 2;
                };
                let Some(mut hi) = hi else { break };
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    if self.reaches_half(u, base, &rest[..mid])? {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                found.push(rest[hi - 1]);
                rest = &rest[hi..];
            }
        }
        Ok(found)
    }

    /// Members of a vertex set as a list.
    pub fn list(s: &VertexSet) -> Vec<usize> {
        members(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::HiddenGraph;

    fn prober(n: usize, e: &[(usize, usize)]) -> CutProber {
        CutProber::new(CutOracle::new(HiddenGraph::from_edges(n, e).unwrap()))
    }

    #[test]
    fn majority_on_a_star() {
        // Center 0 with leaves 1, 2, 3; vertex 4 isolated.
        let mut p = prober(5, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(p.majority_of(0, &[1]).unwrap(), Sign::Less);
        assert_eq!(p.majority_of(0, &[1, 2]).unwrap(), Sign::Greater);
        assert_eq!(p.tipping_point(0, &[1], &[2, 3]).unwrap(), 1);
        assert_eq!(p.tipping_point(0, &[4], &[1, 2]).unwrap(), 2);
        assert_eq!(p.tipping_point(0, &[1, 2], &[3]), Err(Error::NoSignChange));
    }

    #[test]
    fn isolation_and_medians() {
        let mut p = prober(5, &[(0, 1), (0, 2), (0, 3), (1, 2)]);
        assert!(p.is_isolated(4).unwrap());
        assert!(!p.is_isolated(0).unwrap());
        assert!(p.medians(4).unwrap().is_none());
        let m = p.medians(0).unwrap().unwrap();
        let before = p.oracle().counts().total();
        assert_eq!(p.medians(0).unwrap().unwrap(), m);
        assert_eq!(p.oracle().counts().total(), before);
        let g = p.oracle().hidden().clone();
        for s in [&m.minus, &m.plus] {
            let c = s.ones().filter(|&v| g.has_edge(0, v)).count();
            assert!(2 * c < 3 && 2 * (c + 1) >= 3, "median holds {c} of 3");
        }
    }

    #[test]
    fn too_small_for_isolation_test() {
        let mut p = prober(3, &[(0, 1)]);
        assert_eq!(
            p.is_isolated(0),
            Err(Error::TooFewVertices {
                needed: 4,
                found: 3
            })
        );
    }

    #[test]
    fn neighbor_discovery() {
        let edges = [(0, 1), (0, 4), (0, 5), (2, 3), (3, 5), (1, 2)];
        let mut p = prober(7, &edges);
        let g = p.oracle().hidden().clone();
        for u in 0..7 {
            let all: Vec<usize> = (0..7).filter(|&v| v != u).collect();
            assert_eq!(p.neighbors_in_set(u, &all).unwrap(), g.neighbors(u));
            let mut ex = p.extract_edges(u, &all, usize::MAX).unwrap();
            ex.sort_unstable();
            assert_eq!(ex, g.neighbors(u));
            let rev: Vec<usize> = all.iter().rev().copied().collect();
            assert_eq!(
                p.first_neighbor(u, &rev).unwrap(),
                g.neighbors(u).last().copied()
            );
        }
    }
}
