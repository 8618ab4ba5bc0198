// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Literal fixtures: the heavy-edge pair of universes and the graphs that
//! cut comparisons cannot identify.

use cmpopt::cuts::fixtures::{
    comparison_table, cut_label, cut_order, heavy_edge_universes, triangle_pair, HEAVY_EDGE_NAMES,
};
use cmpopt::cuts::{reconstruct_graph, CutOracle, CutProber, HiddenGraph};
use cmpopt::numeric::Rat;
use cmpopt::{Error, Sign};

/// Cuts from heaviest to lightest, named by the side holding `a` or a
/// singleton.
pub const LISTED_HEAVY_EDGE_ORDER: [&str; 7] = ["ad", "a", "ab", "b", "ac", "c", "d"];

/// True if every universe orders its cuts exactly as listed.
pub fn heavy_edge_order_holds(universes: &[HiddenGraph]) -> bool {
    universes.iter().all(|g| {
        let mut o = CutOracle::new(g.clone());
        match cut_order(&mut o) {
            Ok(order) => order
                .iter()
                .map(|s| cut_label(s, &HEAVY_EDGE_NAMES))
                .eq(LISTED_HEAVY_EDGE_ORDER),
            Err(_) => false,
        }
    })
}

/// Both heavy-edge universes order their cuts as listed.
pub fn table_fixture_heavy_edge() -> bool {
    heavy_edge_order_holds(&heavy_edge_universes())
}

/// Copy of `g` with the weight of edge `uv` replaced.
pub fn with_weight(g: &HiddenGraph, u: usize, v: usize, w: Rat) -> HiddenGraph {
    let mut edges: Vec<(usize, usize, Rat)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)))
        .map(|(a, b)| (a, b, g.weight(a, b)))
        .collect();
    edges.push((u, v, w));
    HiddenGraph::weighted(g.n(), &edges).expect("same vertex set")
}

/// The indistinguishable pairs: `K3` against its complement ties on every
/// comparison, and reconstruction reports both `K2` pairs and both `K3`
/// pairs as unidentifiable.
pub fn indistinguishability_holds() -> bool {
    let [k3, e3] = triangle_pair();
    let t1 = comparison_table(&mut CutOracle::new(k3.clone()));
    let t2 = comparison_table(&mut CutOracle::new(e3.clone()));
    let ties =
        matches!((&t1, &t2), (Ok(a), Ok(b)) if a == b && a.iter().all(|x| x.2 == Sign::Equal));
    let k2 = HiddenGraph::from_edges(2, &[(0, 1)]).expect("valid");
    let e2 = HiddenGraph::empty(2);
    let refused = [k2, e2, k3, e3].into_iter().all(|g| {
        matches!(
            reconstruct_graph(&mut CutProber::new(CutOracle::new(g))),
            Err(Error::Unidentifiable)
        )
    });
    ties && refused
}
