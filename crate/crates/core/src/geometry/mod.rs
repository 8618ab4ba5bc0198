// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Cone geometry of weight-sorted point sequences.
//!
//! For a sequence `y_1, ..., y_k` sorted by hidden weight, every consecutive
//! difference `y_{i+1} - y_i` has nonnegative weight, so any point in
//! `y_1 + cone(differences)` weighs at least `y_1`. The *envelope* is that
//! cone. Sieving ([`sieve`]) discards every point the envelope of a sorted
//! sample already dominates.

mod lp;
pub mod sieve;

pub use lp::{cone_membership, verify as verify_cone_certificate, ConeMembership, ConeTester};
pub use sieve::{sieve_optimize, FamilyPoints, PointComparator, SieveResult, VectorOracle};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, Rat};
use crate::oracle::Sign;

/// Points in `Q^d`, addressed by their position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<Rat>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        Ok(Self { dim, points })
    }

    /// Indicator vectors of the given sets.
    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Self {
        let points = sets
            .iter()
            .map(|s| {
                let mut v = vec![Rat::from_integer(0.into()); n];
                for &e in s {
                    v[e] = Rat::from_integer(1.into());
                }
                v
            })
            .collect();
        Self { dim: n, points }
    }

    /// Parses `"d N"` followed by `N` lines of `d` rationals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header".into()))?;
        let hdr: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad header {header:?}")))
            })
            .collect::<Result<_>>()?;
        let [d, n] = hdr[..] else {
            return Err(Error::Parse(format!(
                "header must be \"d N\", got {header:?}"
            )));
        };
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("too few points".into()))?;
            let p = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            points.push(p);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after points".into()));
        }
        Self::new(d, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[Rat] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    /// `x_i - x_j`.
    pub fn diff(&self, i: usize, j: usize) -> Vec<Rat> {
        sub(&self.points[i], &self.points[j])
    }
}

pub(crate) fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn check_dims(x: &[Rat], vs: &[Vec<Rat>]) -> Result<()> {
    match vs.iter().find(|v| v.len() != x.len()) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: x.len(),
            found: v.len(),
        }),
        None => Ok(()),
    }
}

/// Exact test of `x in cone(V)` with a certificate.
pub fn cone_member(x: &[Rat], v: &[Vec<Rat>]) -> Result<ConeMembership> {
    check_dims(x, v)?;
    Ok(cone_membership(x, v))
}

/// Consecutive differences `y_{i+1} - y_i` of a sequence of vectors.
pub fn envelope_generators(seq: &[&[Rat]]) -> Vec<Vec<Rat>> {
    seq.windows(2).map(|w| sub(w[1], w[0])).collect()
}

/// Whether `x` lies in the envelope of the sequence.
pub fn envelope_member(seq: &[&[Rat]], x: &[Rat]) -> Result<bool> {
    let gens = envelope_generators(seq);
    check_dims(x, &gens)?;
    if let Some(y) = seq.first() {
        if y.len() != x.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
    }
    Ok(cone_membership(x, &gens).is_member())
}

/// Positions (into `seq`) of the basic subsequence: scan in order and keep
/// `y_t` when `y_t - y_1` escapes the envelope of what has been kept so far.
pub fn basic_subsequence(seq: &[&[Rat]]) -> Vec<usize> {
    let Some(first) = seq.first() else {
        return Vec::new();
    };
    let mut kept = vec![0];
    let mut gens: Vec<Vec<Rat>> = Vec::new();
    for t in 1..seq.len() {
        let x = sub(seq[t], first);
        if !cone_membership(&x, &gens).is_member() {
            let last = seq[*kept.last().expect("kept is nonempty")];
            gens.push(sub(seq[t], last));
            kept.push(t);
        }
    }
    kept
}

/// Every `y_t - y_1` escapes the envelope of the prefix before it.
pub fn conically_independent(seq: &[&[Rat]]) -> bool {
    let Some(first) = seq.first() else {
        return true;
    };
    let mut gens: Vec<Vec<Rat>> = Vec::new();
    for t in 1..seq.len() {
        if cone_membership(&sub(seq[t], first), &gens).is_member() {
            return false;
        }
        gens.push(sub(seq[t], seq[t - 1]));
    }
    true
}

/// Smallest `k` with `2^k > (2k + 1)^d`: an upper bound on the conic
/// dimension of `{0,1}^d`.
pub fn boolean_conic_dim_bound(d: u32) -> u32 {
    assert!(d >= 1, "dimension must be positive");
    let mut k = 1u32;
    loop {
        let lhs = BigInt::from(1) << k;
        let rhs = num_traits::pow(BigInt::from(2 * k + 1), d as usize);
        if lhs > rhs {
            return k;
        }
        k += 1;
    }
}

/// Index pairs `(i, j)` standing for the implied inequality `w(x_i) >= w(x_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Certificate {
    pub pairs: Vec<(usize, usize)>,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks `P ⊆ x_y + cone{x_i - x_j : (i, j) in C}` point by point.
    pub fn verify(&self, points: &PointSet, y: usize) -> bool {
        let gens: Vec<Vec<Rat>> = self.pairs.iter().map(|&(i, j)| points.diff(i, j)).collect();
        (0..points.len()).all(|p| cone_membership(&points.diff(p, y), &gens).is_member())
    }
}

/// Induced certificate of a sequence: consecutive pairs, later index first.
pub fn induced_certificate(seq: &[usize]) -> Certificate {
    Certificate {
        pairs: seq.windows(2).map(|w| (w[1], w[0])).collect(),
    }
}

/// Certificate that `order[0]` is a minimizer, from the basic subsequence of
/// a full weight-sorted order. Consecutive pairs of `order` are checked
/// against the comparator first.
pub fn extract_certificate<C: PointComparator + ?Sized>(
    points: &PointSet,
    order: &[usize],
    cmp: &mut C,
) -> Result<Certificate> {
    if order.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for w in order.windows(2) {
        if cmp.compare_points(w[0], w[1])? == Sign::Greater {
            return Err(Error::UnsortedInput(w[0], w[1]));
        }
    }
    let seq: Vec<&[Rat]> = order.iter().map(|&i| points.point(i)).collect();
    let basic: Vec<usize> = basic_subsequence(&seq)
        .into_iter()
        .map(|p| order[p])
        .collect();
    Ok(induced_certificate(&basic))
}
