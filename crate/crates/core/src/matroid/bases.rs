// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Minimum-weight basis from basis comparisons.
//!
//! Two elements of one connected component can be exchanged between two
//! bases `B ∋ e` and `B' = B - e + f`, so comparing those bases compares
//! `w_e` with `w_f`. Sorting each component this way and running the greedy
//! algorithm gives a minimum basis with `O(n log n)` comparisons.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{greedy_basis, sorted, Counted, Matroid};
use crate::error::{Error, Result};
use crate::oracle::{FeasibleFamily, SetOracle, Sign};
use crate::sort::merge_sort_by;

/// Connected components of a matroid, read off the exchange graph `H(B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    pub basis: Vec<usize>,
    /// Component label of each element.
    pub component: Vec<usize>,
    pub count: usize,
    /// `H(B)`: `x ∉ B` and `y ∈ B` are adjacent iff `B + x - y` is a basis.
    pub exchange: Vec<Vec<usize>>,
    #[serde(skip)]
    alternates: HashMap<Vec<usize>, Vec<Vec<usize>>>,
}

impl Components {
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.component.len())
            .filter(|&e| self.component[e] == c)
            .collect()
    }
}

fn exchange_graph<M: Matroid + ?Sized>(m: &M, basis: &[usize]) -> Vec<Vec<usize>> {
    let n = m.ground_size();
    let mut adj = vec![Vec::new(); n];
    for x in (0..n).filter(|x| !basis.contains(x)) {
        for &y in basis {
            let s = sorted(
                basis
                    .iter()
                    .copied()
                    .filter(|&b| b != y)
                    .chain([x])
                    .collect(),
            );
            if m.is_independent(&s) {
                adj[x].push(y);
                adj[y].push(x);
            }
        }
    }
    adj
}

/// Builds `H(B)` for a greedy basis `B` and labels its connected components.
pub fn matroid_components<M: Matroid + ?Sized>(m: &M) -> Result<Components> {
    let n = m.ground_size();
    let basis = greedy_basis(m);
    for &y in &basis {
        let s: Vec<usize> = basis.iter().copied().filter(|&b| b != y).collect();
        if !m.is_independent(&s) {
            return Err(Error::NotAMatroid(format!("basis minus {y} is dependent")));
        }
    }
    let exchange = exchange_graph(m, &basis);
    for x in (0..n).filter(|x| !basis.contains(x)) {
        if exchange[x].is_empty() && m.is_independent(&[x]) {
            return Err(Error::NotAMatroid(format!(
                "element {x} has no exchange partner"
            )));
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        component[s] = count;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &exchange[u] {
                if component[v] == usize::MAX {
                    component[v] = count;
                    q.push_back(v);
                }
            }
        }
        count += 1;
    }
    Ok(Components {
        basis,
        component,
        count,
        exchange,
        alternates: HashMap::new(),
    })
}

fn shortest_path(adj: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut q = VecDeque::from([from]);
    while let Some(u) = q.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut v = to;
            while v != from {
                v = prev[v];
                path.push(v);
            }
            path.reverse();
            return Some(path);
        }
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                q.push_back(v);
            }
        }
    }
    None
}

fn check_basis<M: Matroid + ?Sized>(m: &M, s: &[usize], rank: usize) -> Result<()> {
    if s.len() != rank || !m.is_independent(s) {
        return Err(Error::NotAMatroid(format!(
            "exchange produced a non-basis {s:?}"
        )));
    }
    Ok(())
}

/// Bases `(B ∋ e, B - e + f)` with `B` reached from `basis`, where `e ∈ basis`
/// and `f ∉ basis`: the shortest `f`-`e` path `P` in `H(basis)` gives a basis
/// `basis Δ P ∋ f` that exchanges back to `e`.
fn pair_from<M: Matroid + ?Sized>(
    m: &M,
    basis: &[usize],
    adj: &[Vec<usize>],
    e: usize,
    f: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let path = shortest_path(adj, f, e)
        .ok_or_else(|| Error::NotAMatroid(format!("no exchange path from {f} to {e}")))?;
    let with_f: Vec<usize> = sorted(
        basis
            .iter()
            .copied()
            .filter(|b| !path.contains(b))
            .chain(path.iter().copied().filter(|p| !basis.contains(p)))
            .collect(),
    );
    let with_e = sorted(
        with_f
            .iter()
            .copied()
            .filter(|&x| x != f)
            .chain([e])
            .collect(),
    );
    check_basis(m, &with_f, basis.len())?;
    check_basis(m, &with_e, basis.len())?;
    Ok((with_e, with_f))
}

/// Two bases that differ exactly in `e` (first) and `f` (second).
pub fn exchange_pair<M: Matroid + ?Sized>(
    m: &M,
    comps: &mut Components,
    e: usize,
    f: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if comps.component[e] != comps.component[f] || e == f {
        return Err(Error::DifferentComponents(e, f));
    }
    let b = comps.basis.clone();
    let (in_e, in_f) = (b.contains(&e), b.contains(&f));
    match (in_e, in_f) {
        (true, false) => pair_from(m, &b, &comps.exchange, e, f),
        (false, true) => pair_from(m, &b, &comps.exchange, f, e).map(|(x, y)| (y, x)),
        _ => {
            // Swap one of the two across first so exactly one lies in the basis.
            let alt = if in_e {
                let x = comps.exchange[f][0];
                sorted(b.iter().copied().filter(|&y| y != f).chain([x]).collect())
            } else {
                let y = comps.exchange[e][0];
                sorted(b.iter().copied().filter(|&z| z != y).chain([e]).collect())
            };
            check_basis(m, &alt, b.len())?;
            if !comps.alternates.contains_key(&alt) {
                let adj = exchange_graph(m, &alt);
                comps.alternates.insert(alt.clone(), adj);
            }
            pair_from(m, &alt, &comps.alternates[&alt], e, f)
        }
    }
}

/// `sign(w_e - w_f)` from one basis comparison.
pub fn compare_elements<M: Matroid + ?Sized, F: FeasibleFamily>(
    m: &M,
    comps: &mut Components,
    oracle: &mut SetOracle<F>,
    e: usize,
    f: usize,
) -> Result<Sign> {
    if e == f {
        return Ok(Sign::Equal);
    }
    let (with_e, with_f) = exchange_pair(m, comps, e, f)?;
    oracle.compare(&with_e, &with_f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisResult {
    pub basis: Vec<usize>,
    pub components: usize,
    pub comparisons: u64,
    pub independence_tests: u64,
}

/// Minimum-weight basis. `oracle` compares bases of `m`.
pub fn min_weight_basis<M: Matroid + ?Sized, F: FeasibleFamily>(
    m: &M,
    oracle: &mut SetOracle<F>,
) -> Result<BasisResult> {
    let cm = Counted::new(m);
    let before = oracle.counts().compare;
    let mut comps = matroid_components(&cm)?;
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..comps.count {
        let members = comps.members(c);
        let order = merge_sort_by(members, |&a, &b| {
            compare_elements(&cm, &mut comps, oracle, a, b).map(Sign::to_ordering)
        })?;
        for e in order {
            let s = sorted(chosen.iter().copied().chain([e]).collect());
            if cm.is_independent(&s) {
                chosen = s;
            }
        }
    }
    Ok(BasisResult {
        basis: chosen,
        components: comps.count,
        comparisons: oracle.counts().compare - before,
        independence_tests: cm.calls(),
    })
}
