// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact reconstruction of an unweighted graph from cut comparisons.

use super::{vertex_set, CutProber};
use crate::error::{Error, Result};
use crate::oracle::Sign;

/// Learns every edge, returned as sorted pairs `(u, v)` with `u < v`.
///
/// Edges from `u` to higher labels are extracted while few edges are known,
/// and tested one by one once the graph has proved dense, for
/// `O(min((m + n) log n, n^2))` comparisons overall.
pub fn reconstruct_graph(p: &mut CutProber) -> Result<Vec<(usize, usize)>> {
    let n = p.n();
    match n {
        0 | 1 => return Ok(Vec::new()),
        2 => return Err(Error::Unidentifiable),
        3 => return reconstruct_three(p),
        _ => {}
    }
    let dense_at = (n * n) as f64 / (n as f64).log2();
    let mut edges = Vec::new();
    for u in 0..n - 1 {
        let t: Vec<usize> = (u + 1..n).collect();
        let found = if (edges.len() as f64) < dense_at {
            p.extract_edges(u, &t, usize::MAX)?
        } else {
            p.neighbors_in_set(u, &t)?
        };
        edges.extend(found.into_iter().map(|v| (u, v)));
    }
    edges.sort_unstable();
    Ok(edges)
}

/// Three vertices: cuts are the degrees, and `K3` and its complement look
/// alike.
fn reconstruct_three(p: &mut CutProber) -> Result<Vec<(usize, usize)>> {
    let n = 3;
    let mut s = [[Sign::Equal; 3]; 3];
    for a in 0..3 {
        for b in a + 1..3 {
            s[a][b] = p
                .oracle_mut()
                .compare_cuts(&vertex_set(n, &[a]), &vertex_set(n, &[b]))?;
            s[b][a] = s[a][b].reverse();
        }
    }
    let below = |a: usize| (0..3).filter(|&b| s[a][b] == Sign::Less).count();
    let above = |a: usize| (0..3).filter(|&b| s[a][b] == Sign::Greater).count();
    // Degrees (1, 1, 0): the edge joins the two higher vertices.
    if let Some(low) = (0..3).find(|&a| below(a) == 2) {
        let (a, b) = match low {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        return Ok(vec![(a, b)]);
    }
    // Degrees (1, 2, 1): a path through the higher vertex.
    if let Some(center) = (0..3).find(|&a| above(a) == 2) {
        let mut e: Vec<(usize, usize)> = (0..3)
            .filter(|&b| b != center)
            .map(|b| (center.min(b), center.max(b)))
            .collect();
        e.sort_unstable();
        return Ok(e);
    }
    Err(Error::Unidentifiable)
}
