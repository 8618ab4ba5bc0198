// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Cut sparsifier built from percolation samples of successively contracted
//! graphs.
//!
//! Level `j` targets edge strength `κ_j = n 2^-j`. A percolation sample at
//! rate `q_j` is split by repeatedly removing cuts of at most
//! `q_j (4/5) κ_j` sampled edges; the surviving pieces are strongly
//! connected, so their edges are sampled into `H` at rate `2 q_j / ε²` and
//! the pieces are contracted before the next level.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::flow::{stoer_wagner, WeightedGraph};
use super::{sample_percolation, CutProber, VertexPartition};
use crate::error::{Error, Result};

const TOL: f64 = 1e-9;
/// Oversampling constant in the per-level rate `q_j`.
const RATE_CONSTANT: f64 = 100.0 * 40.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelStats {
    pub level: usize,
    pub kappa: f64,
    pub q: f64,
    pub threshold: f64,
    pub keep_p: f64,
    pub sampled_edges: usize,
    pub components: usize,
    pub added_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sparsifier {
    pub n: usize,
    pub eps: f64,
    /// Weighted edges of `H`.
    pub edges: Vec<(usize, usize, f64)>,
    pub levels: Vec<LevelStats>,
    /// Partition before each level, then the final one.
    partitions: Vec<VertexPartition>,
}

impl Sparsifier {
    pub fn graph(&self) -> WeightedGraph {
        WeightedGraph {
            n: self.n,
            edges: self.edges.clone(),
        }
    }

    /// Weight of `H` across the cut with side `side`.
    pub fn cut_value(&self, side: &[usize]) -> f64 {
        let mut mask = vec![false; self.n];
        side.iter().for_each(|&v| mask[v] = true);
        self.graph().cut_value(&mask)
    }

    /// Strength estimate `κ_j / 2` for a pair first joined at level `j`.
    pub fn strength(&self, u: usize, v: usize) -> Option<f64> {
        (0..self.levels.len()).find_map(|j| {
            let (a, b) = (&self.partitions[j], &self.partitions[j + 1]);
            (a.block_of(u) != a.block_of(v) && b.block_of(u) == b.block_of(v))
                .then(|| self.levels[j].kappa / 2.0)
        })
    }
}

/// Splits the blocks into pieces whose sampled graph has no cut of at most
/// `threshold` edges.
fn strong_pieces(blocks: usize, edges: &[(usize, usize)], threshold: f64) -> Vec<Vec<usize>> {
    let mut done = Vec::new();
    let mut work: Vec<(Vec<usize>, Vec<(usize, usize)>)> =
        vec![((0..blocks).collect(), edges.to_vec())];
    while let Some((verts, es)) = work.pop() {
        let comps = components(&verts, &es);
        if comps.len() > 1 {
            for c in comps {
                let inner: Vec<_> = es
                    .iter()
                    .copied()
                    .filter(|&(a, _)| c.binary_search(&a).is_ok())
                    .collect();
                work.push((c, inner));
            }
            continue;
        }
        if verts.len() < 2 {
            done.push(verts);
            continue;
        }
        let local = |x: usize| verts.binary_search(&x).unwrap();
        let mut g = WeightedGraph::new(verts.len());
        es.iter().for_each(|&(a, b)| g.add(local(a), local(b), 1.0));
        let (value, side) = stoer_wagner(&g).expect("two or more vertices");
        if value <= threshold + TOL {
            let mut mask = vec![false; verts.len()];
            side.iter().for_each(|&i| mask[i] = true);
            let kept: Vec<_> = es
                .into_iter()
                .filter(|&(a, b)| mask[local(a)] == mask[local(b)])
                .collect();
            work.push((verts, kept));
        } else {
            done.push(verts);
        }
    }
    done.sort();
    done
}

/// Connected components of `(verts, es)`, each sorted.
fn components(verts: &[usize], es: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let local = |x: usize| verts.binary_search(&x).unwrap();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in es {
        let (ra, rb) = (find(&mut parent, local(a)), find(&mut parent, local(b)));
        parent[ra] = rb;
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, &v) in verts.iter().enumerate() {
        groups.entry(find(&mut parent, i)).or_default().push(v);
    }
    groups.into_values().collect()
}

/// Builds a `(1 ± ε)` cut sparsifier of the hidden graph.
///
/// At small `n` the rates `q_j` saturate at one; the complete inter-block
/// edge set learned at the first such level is then reused instead of
/// querying for it again.
pub fn build_sparsifier<R: Rng + ?Sized>(
    prober: &mut CutProber,
    eps: f64,
    rng: &mut R,
) -> Result<Sparsifier> {
    let n = prober.n();
    if n < 2 {
        return Err(Error::TooFewVertices {
            needed: 2,
            found: n,
        });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps {eps} outside (0, 1)")));
    }
    let ln_n = (n as f64).ln();
    let top = (n as f64).log2().ceil() as usize;
    let mut part = VertexPartition::singletons(n);
    let mut partitions = vec![part.clone()];
    let mut known: Option<Vec<(usize, usize)>> = None;
    let mut h = Vec::new();
    let mut levels = Vec::new();
    for j in 0..=top {
        if part.len() == 1 {
            break;
        }
        let kappa = n as f64 / (1u64 << j) as f64;
        let q = (RATE_CONSTANT * ln_n / kappa).min(1.0);
        let sampled = if q >= 1.0 {
            if known.is_none() {
                known = Some(sample_percolation(prober, &part, 1.0, None, rng)?);
            }
            known.clone().unwrap()
        } else {
            sample_percolation(prober, &part, q, None, rng)?
        };
        let threshold = q * 0.8 * kappa;
        let block_edges: Vec<(usize, usize)> = sampled
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (part.block_of(u), part.block_of(v));
                (a.min(b), a.max(b))
            })
            .collect();
        let pieces = strong_pieces(part.len(), &block_edges, threshold);
        let keep_p = (2.0 * q / (eps * eps)).min(1.0);
        let weight = 1.0 / keep_p;
        let mut added = 0;
        for piece in pieces.iter().filter(|p| p.len() > 1) {
            let inner = match (&known, keep_p >= 1.0) {
                (Some(all), true) => {
                    let mut inside = vec![false; part.len()];
                    piece.iter().for_each(|&b| inside[b] = true);
                    all.iter()
                        .copied()
                        .filter(|&(u, v)| inside[part.block_of(u)] && inside[part.block_of(v)])
                        .collect()
                }
                _ => sample_percolation(prober, &part, keep_p, Some(piece), rng)?,
            };
            added += inner.len();
            h.extend(inner.into_iter().map(|(u, v)| (u, v, weight)));
        }
        levels.push(LevelStats {
            level: j,
            kappa,
            q,
            threshold,
            keep_p,
            sampled_edges: sampled.len(),
            components: pieces.len(),
            added_edges: added,
        });
        let mut label = vec![0; n];
        for (i, piece) in pieces.iter().enumerate() {
            for v in part.expand(piece) {
                label[v] = i;
            }
        }
        part = VertexPartition::from_labels(&label);
        if let Some(all) = &mut known {
            all.retain(|&(u, v)| part.block_of(u) != part.block_of(v));
        }
        partitions.push(part.clone());
    }
    h.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    Ok(Sparsifier {
        n,
        eps,
        edges: h,
        levels,
        partitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces_split_on_light_cuts() {
        // Two triangles joined by one edge.
        let e = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)];
        assert_eq!(
            strong_pieces(6, &e, 1.0),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
        assert_eq!(strong_pieces(6, &e, 0.5), vec![vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(strong_pieces(3, &[], 0.5), vec![vec![0], vec![1], vec![2]]);
    }
}
