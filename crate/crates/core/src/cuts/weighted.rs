// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Weighted minimum cut in two settings: with marginal comparisons, and with
//! plain comparisons when the graph has few degree classes.

use serde::{Deserialize, Serialize};

use super::{normalize_side, vertex_set, CutOracle};
use crate::error::{Error, Result};
use crate::oracle::{QueryCounts, Sign};
use crate::sort::merge_sort_by;

/// Largest instance accepted by [`weighted_mincut_fewclasses`].
pub const FEW_CLASSES_MAX_N: usize = 12;
pub const FEW_CLASSES_MAX_B: i64 = 4;
pub const FEW_CLASSES_MAX_GUESSES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedMinCut {
    /// Side of the cut containing vertex 0.
    pub side: Vec<usize>,
    /// Degree classes found (few-classes method only).
    pub classes: usize,
    /// Weight guesses enumerated (few-classes method only).
    pub guesses: usize,
    /// Cuts compared in the final selection.
    pub candidates: usize,
    pub queries: QueryCounts,
}

fn set(n: usize, groups: &[Vec<usize>], ids: &[usize]) -> super::VertexSet {
    let vs: Vec<usize> = ids
        .iter()
        .flat_map(|&i| groups[i].iter().copied())
        .collect();
    vertex_set(n, &vs)
}

fn pick_min(o: &mut CutOracle, sides: Vec<Vec<usize>>) -> Result<Vec<usize>> {
    let n = o.n();
    let mut it = sides.into_iter();
    let mut best = it.next().ok_or(Error::TrivialCut)?;
    for s in it {
        if o.compare_cuts(&vertex_set(n, &s), &vertex_set(n, &best))? == Sign::Less {
            best = s;
        }
    }
    Ok(best)
}

/// Stoer–Wagner phases driven by marginal comparisons.
///
/// The most tightly connected vertex `u` to the growing set `A` minimizes
/// `w(∂(A + u)) - w(∂u) = w(∂A) - 2 w(A, u)`, so each step is an argmin of
/// marginals. Each phase yields the cut around its last vertex; the
/// lightest of these is the minimum cut.
pub fn ni_mincut_marginal(o: &mut CutOracle) -> Result<WeightedMinCut> {
    let n = o.n();
    if n < 2 {
        return Err(Error::TooFewVertices {
            needed: 2,
            found: n,
        });
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut phase_cuts = Vec::new();
    while groups.len() > 1 {
        let mut in_a = vec![0usize];
        let mut rest: Vec<usize> = (1..groups.len()).collect();
        while !rest.is_empty() {
            let mut best = 0;
            for i in 1..rest.len() {
                let (g, b) = (rest[i], rest[best]);
                let mut ag = in_a.clone();
                ag.push(g);
                let mut ab = in_a.clone();
                ab.push(b);
                let s = o.compare_marginals(
                    &set(n, &groups, &ag),
                    &set(n, &groups, &[g]),
                    &set(n, &groups, &ab),
                    &set(n, &groups, &[b]),
                )?;
                if s == Sign::Less {
                    best = i;
                }
            }
            in_a.push(rest.remove(best));
        }
        let (s, t) = (in_a[in_a.len() - 2], in_a[in_a.len() - 1]);
        phase_cuts.push(groups[t].clone());
        let moved = groups.remove(t);
        let s = if s > t { s - 1 } else { s };
        groups[s].extend(moved);
    }
    let candidates = phase_cuts.len();
    let best = if n == 2 {
        vec![0]
    } else {
        pick_min(o, phase_cuts)?
    };
    Ok(WeightedMinCut {
        side: normalize_side(n, &best),
        classes: 0,
        guesses: 0,
        candidates,
        queries: o.counts(),
    })
}

/// Weight ranges `{0}, {1}, [2, 4), [4, 8), ...` clipped to `0..=b`, as
/// `(representative, capacity)`.
fn ranges(b: i64) -> Vec<(i64, usize)> {
    let mut r = vec![(0, 1)];
    let mut lo = 1;
    while lo <= b {
        let hi = (2 * lo).min(b + 1);
        r.push((lo, (hi - lo) as usize));
        lo *= 2;
    }
    r
}

/// Non-decreasing maps from `len` ordered buckets to ranges that respect
/// each range's capacity (distinct buckets have distinct integer weights).
fn monotone_maps(len: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn go(
        i: usize,
        len: usize,
        r: usize,
        used: usize,
        caps: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == len {
            out.push(cur.clone());
            return;
        }
        for rr in r..caps.len() {
            let u = if rr == r { used } else { 0 };
            if u < caps[rr] {
                cur.push(rr);
                go(i + 1, len, rr, u + 1, caps, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, len, 0, 0, caps, &mut Vec::new(), &mut out);
    out
}

/// Minimum cut of a graph with integer weights in `0..=b` and at most
/// `max_classes` distinct weighted degrees, using cut comparisons only.
///
/// Pairs `{u, v}` from a fixed pair of degree classes have weight
/// `(d(u) + d(v) - w(∂{u, v})) / 2` with `d(u) + d(v)` fixed, so sorting
/// their two-vertex cuts sorts their weights. Each guess of which power-of-two
/// range every weight bucket falls in gives weights within a factor two;
/// the cuts within twice the guessed minimum contain the true minimum for
/// the right guess. All such cuts are compared directly.
pub fn weighted_mincut_fewclasses(
    o: &mut CutOracle,
    b: i64,
    max_classes: usize,
) -> Result<WeightedMinCut> {
    let n = o.n();
    if n > FEW_CLASSES_MAX_N || b > FEW_CLASSES_MAX_B || b < 0 {
        return Err(Error::ScaleExceeded(format!(
            "n = {n}, B = {b}; limits n <= {FEW_CLASSES_MAX_N}, 0 <= B <= {FEW_CLASSES_MAX_B}"
        )));
    }
    if n < 3 {
        if n == 2 {
            return Ok(WeightedMinCut {
                side: vec![0],
                classes: 1,
                guesses: 0,
                candidates: 1,
                queries: o.counts(),
            });
        }
        return Err(Error::TooFewVertices {
            needed: 2,
            found: n,
        });
    }
    // Degree classes, lightest first.
    let order = merge_sort_by((0..n).collect::<Vec<_>>(), |&a, &c| {
        o.compare_cuts(&vertex_set(n, &[a]), &vertex_set(n, &[c]))
            .map(Sign::to_ordering)
    })?;
    let mut class = vec![0; n];
    let mut classes = 1;
    for w in order.windows(2) {
        if o.compare_cuts(&vertex_set(n, &[w[0]]), &vertex_set(n, &[w[1]]))? != Sign::Equal {
            classes += 1;
        }
        class[w[1]] = classes - 1;
    }
    if classes > max_classes {
        return Err(Error::ScaleExceeded(format!(
            "{classes} degree classes, limit {max_classes}"
        )));
    }
    // Pairs grouped by class pair, then bucketed by weight (ascending).
    let mut groups: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> =
        Default::default();
    for u in 0..n {
        for v in u + 1..n {
            let (a, c) = (class[u].min(class[v]), class[u].max(class[v]));
            groups.entry((a, c)).or_default().push((u, v));
        }
    }
    // bucket_of[u][v] is a flat bucket index; `spans` lists each group's buckets.
    let mut bucket_of = vec![vec![usize::MAX; n]; n];
    let mut spans: Vec<usize> = Vec::new();
    let mut flat = 0;
    for pairs in groups.into_values() {
        // Heavier pairs have lighter two-vertex cuts.
        let sorted = merge_sort_by(pairs, |&(a, c), &(x, y)| {
            o.compare_cuts(&vertex_set(n, &[x, y]), &vertex_set(n, &[a, c]))
                .map(Sign::to_ordering)
        })?;
        let mut count = 1;
        for (i, &(u, v)) in sorted.iter().enumerate() {
            if i > 0 {
                let (a, c) = sorted[i - 1];
                if o.compare_cuts(&vertex_set(n, &[u, v]), &vertex_set(n, &[a, c]))? != Sign::Equal
                {
                    count += 1;
                }
            }
            bucket_of[u][v] = flat + count - 1;
        }
        spans.push(count);
        flat += count;
    }
    // Crossing counts per cut and bucket.
    let sides: Vec<Vec<usize>> = (0..(1u32 << (n - 1)) - 1)
        .map(|m| {
            let mut s = vec![0];
            s.extend((1..n).filter(|&v| (m >> (v - 1)) & 1 == 1));
            s
        })
        .collect();
    let counts: Vec<Vec<u32>> = sides
        .iter()
        .map(|s| {
            let mut inside = vec![false; n];
            s.iter().for_each(|&v| inside[v] = true);
            let mut c = vec![0u32; flat];
            for u in 0..n {
                for v in u + 1..n {
                    if inside[u] != inside[v] {
                        c[bucket_of[u][v]] += 1;
                    }
                }
            }
            c
        })
        .collect();
    let rg = ranges(b);
    let caps: Vec<usize> = rg.iter().map(|r| r.1).collect();
    let per_group: Vec<Vec<Vec<usize>>> =
        spans.iter().map(|&len| monotone_maps(len, &caps)).collect();
    let total: usize = per_group
        .iter()
        .map(Vec::len)
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    if total > FEW_CLASSES_MAX_GUESSES {
        return Err(Error::ScaleExceeded(format!(
            "{total} weight guesses, limit {FEW_CLASSES_MAX_GUESSES}"
        )));
    }
    let mut keep = vec![false; sides.len()];
    let mut idx = vec![0usize; per_group.len()];
    let mut vals = vec![0i64; flat];
    for _ in 0..total {
        let mut off = 0;
        for (g, maps) in per_group.iter().enumerate() {
            for (k, &r) in maps[idx[g]].iter().enumerate() {
                vals[off + k] = rg[r].0;
            }
            off += spans[g];
        }
        let est: Vec<i64> = counts
            .iter()
            .map(|c| c.iter().zip(&vals).map(|(&x, &y)| x as i64 * y).sum())
            .collect();
        let low = *est.iter().min().unwrap();
        for (k, &e) in est.iter().enumerate() {
            if e <= 2 * low {
                keep[k] = true;
            }
        }
        // Next guess in mixed radix.
        for g in 0..idx.len() {
            idx[g] += 1;
            if idx[g] < per_group[g].len() {
                break;
            }
            idx[g] = 0;
        }
    }
    let cands: Vec<Vec<usize>> = sides
        .into_iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(s, _)| s)
        .collect();
    let candidates = cands.len();
    let best = pick_min(o, cands)?;
    Ok(WeightedMinCut {
        side: normalize_side(n, &best),
        classes,
        guesses: total,
        candidates,
        queries: o.counts(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::HiddenGraph;

    #[test]
    fn weighted_triangle() {
        // Edges of weight 1, 2, 3; the vertex on the 1- and 2-edges has the
        // lightest cut, of weight 3.
        let g = HiddenGraph::weighted_i64(3, &[(0, 1, 1), (0, 2, 2), (1, 2, 3)]).unwrap();
        let mut o = CutOracle::new(g.clone());
        let r = ni_mincut_marginal(&mut o).unwrap();
        assert_eq!(g.cut_weight_of(&r.side), crate::numeric::rat(3));
        assert_eq!(r.side, vec![0]);
        assert!(o.counts().marginal > 0);
    }

    #[test]
    fn weighted_six_cycle() {
        let e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6, 2)).collect();
        let g = HiddenGraph::weighted_i64(6, &e).unwrap();
        let mut o = CutOracle::new(g.clone());
        let r = weighted_mincut_fewclasses(&mut o, 2, 1).unwrap();
        assert_eq!(r.classes, 1);
        assert_eq!(g.cut_weight_of(&r.side), crate::numeric::rat(4));
    }

    #[test]
    fn range_guesses() {
        assert_eq!(ranges(4), vec![(0, 1), (1, 1), (2, 2), (4, 1)]);
        assert_eq!(monotone_maps(5, &[1, 1, 2, 1]), vec![vec![0, 1, 2, 2, 3]]);
        assert_eq!(monotone_maps(1, &[1, 1, 2, 1]).len(), 4);
    }
}
