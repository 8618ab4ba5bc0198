// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Separation over all subsets by dynamic programming on reachable sums.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;

use super::lattice::{integer_nullspace, IntegerMatrix};
use crate::error::Result;
use crate::gsl::{GslState, Separator};

/// A subset `S` with `sum_{i in S} w_i` outside `z`, or `None` when every
/// subset sum lies in `z`.
///
/// `V_0 = {0}` (the empty set) and `V_i = V_{i-1} ∪ (w_i + V_{i-1})`. The
/// scan stops at the first value outside `z`; since every earlier value is in
/// `z`, no `V_i` grows beyond `|z| + 1` elements.
pub fn separate_powerset(w: &[Vec<BigInt>], z: &HashSet<Vec<BigInt>>) -> Option<Vec<usize>> {
    let dim = w.first().map_or(0, Vec::len);
    let zero = vec![BigInt::from(0); dim];
    // value -> (element added, predecessor value)
    let mut back: HashMap<Vec<BigInt>, Option<(usize, Vec<BigInt>)>> = HashMap::new();
    let mut order: Vec<Vec<BigInt>> = vec![zero.clone()];
    back.insert(zero.clone(), None);
    let rebuild = |back: &HashMap<Vec<BigInt>, Option<(usize, Vec<BigInt>)>>,
                   mut v: Vec<BigInt>| {
        let mut s = Vec::new();
        while let Some(Some((i, prev))) = back.get(&v) {
            s.push(*i);
            v = prev.clone();
        }
        s.sort_unstable();
        s
    };
    if !z.contains(&zero) {
        return Some(Vec::new());
    }
    for (i, wi) in w.iter().enumerate() {
        let current = order.len();
        for j in 0..current {
            let v: Vec<BigInt> = order[j].iter().zip(wi).map(|(a, b)| a + b).collect();
            if back.contains_key(&v) {
                continue;
            }
            back.insert(v.clone(), Some((i, order[j].clone())));
            if !z.contains(&v) {
                return Some(rebuild(&back, v));
            }
            order.push(v);
        }
    }
    None
}

/// [`Separator`] for the family of all subsets of `0..n`.
pub struct PowersetSeparator {
    n: usize,
}

impl PowersetSeparator {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl Separator for PowersetSeparator {
    fn first_point(&mut self) -> Result<Option<Vec<usize>>> {
        Ok(Some(Vec::new()))
    }

    fn next_point(&mut self, state: &GslState) -> Result<Option<Vec<usize>>> {
        let a = IntegerMatrix::from_i64(self.n, state.basis());
        let w = integer_nullspace(&a);
        let cols = w.columns();
        let z: HashSet<Vec<BigInt>> = state.representatives().iter().map(|r| w.image(r)).collect();
        Ok(separate_powerset(&cols, &z))
    }
}
