// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Small graphs that cut comparisons cannot tell apart.

use super::{vertex_set, CutOracle, HiddenGraph};
use crate::error::Result;
use crate::numeric::{ratio, Rat};
use crate::oracle::Sign;
use crate::sort::merge_sort_by;

/// Vertex names of the heavy-edge fixture.
pub const HEAVY_EDGE_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Two weighted graphs on `{a, b, c, d}` that swap the weights of the heavy
/// edges `ab` and `ac` yet order all seven cuts identically.
pub fn heavy_edge_universes() -> [HiddenGraph; 2] {
    let heavy = ratio(100001, 100);
    let light = ratio(99999, 100);
    let build = |ab: &Rat, ac: &Rat| {
        HiddenGraph::weighted(
            4,
            &[
                (0, 1, ab.clone()),
                (0, 2, ac.clone()),
                (0, 3, ratio(10, 1)),
                (1, 2, ratio(100, 1)),
                (1, 3, ratio(50, 1)),
                (2, 3, ratio(1, 1)),
            ],
        )
        .expect("valid fixture")
    };
    [build(&heavy, &light), build(&light, &heavy)]
}

/// One side of each nontrivial cut on four vertices: the singletons and the
/// pairs containing vertex 0.
pub fn four_vertex_cuts() -> Vec<Vec<usize>> {
    vec![
        vec![0],
        vec![1],
        vec![2],
        vec![3],
        vec![0, 1],
        vec![0, 2],
        vec![0, 3],
    ]
}

pub fn cut_label(side: &[usize], names: &[&str]) -> String {
    side.iter().map(|&v| names[v]).collect()
}

/// The cuts of `four_vertex_cuts` from heaviest to lightest, by comparisons.
pub fn cut_order(o: &mut CutOracle) -> Result<Vec<Vec<usize>>> {
    let n = o.n();
    merge_sort_by(four_vertex_cuts(), |a, b| {
        o.compare_cuts(&vertex_set(n, b), &vertex_set(n, a))
            .map(Sign::to_ordering)
    })
}

/// All answers to comparisons between nontrivial cuts, indexed by the
/// bitmasks of the two sides.
pub fn comparison_table(o: &mut CutOracle) -> Result<Vec<(u32, u32, Sign)>> {
    let n = o.n();
    let sides: Vec<u32> = (1..(1u32 << n) - 1).collect();
    let set = |m: u32| vertex_set(n, &(0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>());
    let mut out = Vec::new();
    for &a in &sides {
        for &b in &sides {
            out.push((a, b, o.compare_cuts(&set(a), &set(b))?));
        }
    }
    Ok(out)
}

/// `K3` and its complement: every cut comparison is a tie in both.
pub fn triangle_pair() -> [HiddenGraph; 2] {
    [
        HiddenGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).expect("valid fixture"),
        HiddenGraph::empty(3),
    ]
}

/// Circular ladder with `k` rungs: rim edges of weight `rim` and rungs of
/// weight `rung`. Vertex `i` is on the outer rim, `k + i` on the inner rim.
pub fn circular_ladder(k: usize, rim: Rat, rung: Rat) -> Result<HiddenGraph> {
    let mut e = Vec::new();
    for i in 0..k {
        let j = (i + 1) % k;
        e.push((i, j, rim.clone()));
        e.push((k + i, k + j, rim.clone()));
        e.push((i, k + i, rung.clone()));
    }
    HiddenGraph::weighted(2 * k, &e)
}
