// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Explicit-graph cut routines used on learned graphs: Stoer–Wagner global
//! min cut, Dinic max flow and the Gusfield (Gomory–Hu) cut tree.

use std::collections::VecDeque;

const TOL: f64 = 1e-9;

/// Weighted undirected edge list over `0..n`; parallel edges add up.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn add(&mut self, u: usize, v: usize, w: f64) {
        self.edges.push((u, v, w));
    }

    /// Weight crossing the cut whose side is given by `side[v]`.
    pub fn cut_value(&self, side: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|(u, v, _)| side[*u] != side[*v])
            .map(|e| e.2)
            .sum()
    }

    fn matrix(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.n]; self.n];
        for &(u, v, w) in &self.edges {
            if u != v {
                a[u][v] += w;
                a[v][u] += w;
            }
        }
        a
    }
}

/// Global minimum cut by Stoer–Wagner. Returns the value and one side, or
/// `None` when `n < 2`.
pub fn stoer_wagner(g: &WeightedGraph) -> Option<(f64, Vec<usize>)> {
    let n = g.n;
    if n < 2 {
        return None;
    }
    let mut a = g.matrix();
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    while alive.len() > 1 {
        let mut key = vec![0.0; n];
        let mut added = vec![false; n];
        let (mut prev, mut last) = (usize::MAX, usize::MAX);
        for _ in 0..alive.len() {
            let &u = alive
                .iter()
                .filter(|&&v| !added[v])
                .max_by(|&&x, &&y| key[x].partial_cmp(&key[y]).unwrap())
                .expect("a vertex remains");
            added[u] = true;
            prev = last;
            last = u;
            for &v in &alive {
                if !added[v] {
                    key[v] += a[u][v];
                }
            }
        }
        let phase = key[last];
        if best.as_ref().map_or(true, |(b, _)| phase < *b - TOL) {
            let mut side = groups[last].clone();
            side.sort_unstable();
            best = Some((phase, side));
        }
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &v in &alive {
            a[prev][v] += a[last][v];
            a[v][prev] = a[prev][v];
        }
        a[prev][prev] = 0.0;
        alive.retain(|&v| v != last);
    }
    best
}

struct Arc {
    to: usize,
    cap: f64,
}

/// Maximum `s`-`t` flow by Dinic's algorithm. Returns the value and the
/// source side of a minimum cut.
pub fn max_flow(g: &WeightedGraph, s: usize, t: usize) -> (f64, Vec<bool>) {
    let n = g.n;
    let mut arcs: Vec<Arc> = Vec::with_capacity(2 * g.edges.len());
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v, w) in &g.edges {
        if u == v {
            continue;
        }
        out[u].push(arcs.len());
        arcs.push(Arc { to: v, cap: w });
        out[v].push(arcs.len());
        arcs.push(Arc { to: u, cap: w });
    }
    let mut flow = 0.0;
    loop {
        let mut level = vec![usize::MAX; n];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &i in &out[u] {
                let a = &arcs[i];
                if a.cap > TOL && level[a.to] == usize::MAX {
                    level[a.to] = level[u] + 1;
                    q.push_back(a.to);
                }
            }
        }
        if level[t] == usize::MAX {
            let side = level.iter().map(|&l| l != usize::MAX).collect();
            return (flow, side);
        }
        let mut next = vec![0usize; n];
        loop {
            let pushed = augment(&mut arcs, &out, &level, &mut next, s, t, f64::INFINITY);
            if pushed <= TOL {
                break;
            }
            flow += pushed;
        }
    }
}

fn augment(
    arcs: &mut [Arc],
    out: &[Vec<usize>],
    level: &[usize],
    next: &mut [usize],
    u: usize,
    t: usize,
    limit: f64,
) -> f64 {
    if u == t {
        return limit;
    }
    while next[u] < out[u].len() {
        let i = out[u][next[u]];
        let (to, cap) = (arcs[i].to, arcs[i].cap);
        if cap > TOL && level[to] == level[u] + 1 {
            let d = augment(arcs, out, level, next, to, t, limit.min(cap));
            if d > TOL {
                arcs[i].cap -= d;
                arcs[i ^ 1].cap += d;
                return d;
            }
        }
        next[u] += 1;
    }
    0.0
}

/// Gusfield's cut tree: `parent[v]` and the min `v`-`parent[v]` cut value,
/// for `v >= 1` (vertex 0 is the root).
pub fn gomory_hu(g: &WeightedGraph) -> Vec<(usize, f64)> {
    let n = g.n;
    let mut tree = vec![(0usize, 0.0f64); n];
    for s in 1..n {
        let t = tree[s].0;
        let (value, side) = max_flow(g, s, t);
        tree[s].1 = value;
        for v in s + 1..n {
            if side[v] && tree[v].0 == t {
                tree[v].0 = s;
            }
        }
    }
    tree
}

/// Pairwise min-cut values `λ(u, v)` from a cut tree: the lightest edge on
/// the tree path.
pub fn pairwise_connectivity(tree: &[(usize, f64)]) -> Vec<Vec<f64>> {
    let n = tree.len();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (v, &(p, w)) in tree.iter().enumerate().skip(1) {
        adj[v].push((p, w));
        adj[p].push((v, w));
    }
    let mut lam = vec![vec![f64::INFINITY; n]; n];
    for s in 0..n {
        let mut stack = vec![(s, usize::MAX, f64::INFINITY)];
        while let Some((u, from, m)) = stack.pop() {
            lam[s][u] = m;
            for &(v, w) in &adj[u] {
                if v != from {
                    stack.push((v, u, m.min(w)));
                }
            }
        }
    }
    lam
}
