// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Iterative sieving: minimize a hidden linear function over a finite point
//! set using only comparisons.
//!
//! While more than `4k` points remain, sample each with probability
//! `min(2k/N, 1)`, sort the sample by comparisons, and drop every point `x`
//! other than the sample minimum `y` with `x - y` in the envelope of the
//! sorted sample. The survivors are sorted at the end.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{envelope_generators, sub, ConeTester, PointSet};
use crate::error::{Error, Result};
use crate::numeric::Rat;
use crate::oracle::{FeasibleFamily, Operand, QueryKind, QueryLedger, SetOracle, Sign};
use crate::par::{map_slice, Execution};
use crate::sort::merge_sort_by;

/// Comparison access to the hidden weights of points, addressed by index.
pub trait PointComparator {
    fn compare_points(&mut self, i: usize, j: usize) -> Result<Sign>;

    /// Comparisons answered so far.
    fn comparisons(&self) -> u64;
}

/// Points are the indicator vectors of `sets`; comparisons go to the set
/// oracle of the family.
pub struct FamilyPoints<'a, F> {
    oracle: &'a mut SetOracle<F>,
    sets: &'a [Vec<usize>],
}

impl<'a, F: FeasibleFamily> FamilyPoints<'a, F> {
    pub fn new(oracle: &'a mut SetOracle<F>, sets: &'a [Vec<usize>]) -> Self {
        Self { oracle, sets }
    }
}

impl<F: FeasibleFamily> PointComparator for FamilyPoints<'_, F> {
    fn compare_points(&mut self, i: usize, j: usize) -> Result<Sign> {
        self.oracle.compare(&self.sets[i], &self.sets[j])
    }

    fn comparisons(&self) -> u64 {
        self.oracle.counts().compare
    }
}

/// Hidden linear functional over an explicit point set.
pub struct VectorOracle<'a> {
    points: &'a PointSet,
    w: Vec<Rat>,
    ledger: QueryLedger,
}

impl<'a> VectorOracle<'a> {
    pub fn new(points: &'a PointSet, w: Vec<Rat>) -> Result<Self> {
        if w.len() != points.dim() {
            return Err(Error::DimensionMismatch {
                expected: points.dim(),
                found: w.len(),
            });
        }
        Ok(Self {
            points,
            w,
            ledger: QueryLedger::new(),
        })
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    /// Test-harness access to `<w, x_i>`.
    pub fn value(&self, i: usize) -> Rat {
        self.points
            .point(i)
            .iter()
            .zip(&self.w)
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl PointComparator for VectorOracle<'_> {
    fn compare_points(&mut self, i: usize, j: usize) -> Result<Sign> {
        if i >= self.points.len() || j >= self.points.len() {
            return Err(Error::InfeasibleQuery(vec![i.max(j)]));
        }
        let ans = Sign::of(&self.value(i), &self.value(j));
        self.ledger.record(
            QueryKind::Compare,
            Operand::Set(vec![i]),
            Operand::Set(vec![j]),
            ans,
        );
        Ok(ans)
    }

    fn comparisons(&self) -> u64 {
        self.ledger.counts().compare
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveRound {
    pub size_before: usize,
    pub sample_size: usize,
    pub eliminated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveResult {
    /// Index of a minimizer.
    pub index: usize,
    pub comparisons: u64,
    pub rounds: Vec<SieveRound>,
}

/// Sorts `idx` by comparisons; ties keep their input order.
pub fn sort_points<C: PointComparator + ?Sized>(
    cmp: &mut C,
    idx: Vec<usize>,
) -> Result<Vec<usize>> {
    merge_sort_by(idx, |&a, &b| Ok(cmp.compare_points(a, b)?.to_ordering()))
}

fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    a.iter().cmp(b.iter())
}

/// Runs iterative sieving with sample parameter `k`.
pub fn sieve_optimize<C: PointComparator + ?Sized>(
    points: &PointSet,
    cmp: &mut C,
    k: usize,
    seed: u64,
    exec: Execution,
) -> Result<SieveResult> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if k == 0 {
        return Err(Error::InvalidArgument(
            "sample parameter k must be positive".into(),
        ));
    }
    let start = cmp.comparisons();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alive: Vec<usize> = (0..points.len()).collect();
    let mut rounds = Vec::new();
    while alive.len() > 4 * k {
        let n = alive.len();
        let prob = (2 * k) as f64 / n as f64;
        let sample: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(prob.min(1.0)))
            .collect();
        if sample.is_empty() {
            rounds.push(SieveRound {
                size_before: n,
                sample_size: 0,
                eliminated: 0,
            });
            continue;
        }
        let sorted = sort_points(cmp, sample)?;
        let y = sorted[0];
        let seq: Vec<&[Rat]> = sorted.iter().map(|&i| points.point(i)).collect();
        let cone = ConeTester::new(envelope_generators(&seq));
        let keep = map_slice(exec, &alive, |&x| {
            x == y || !cone.contains(&sub(points.point(x), points.point(y)))
        });
        let before = alive.len();
        alive = alive
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(x, _)| x)
            .collect();
        rounds.push(SieveRound {
            size_before: before,
            sample_size: sorted.len(),
            eliminated: before - alive.len(),
        });
    }
    let sorted = merge_sort_by(alive, |&a, &b| {
        Ok::<_, Error>(match cmp.compare_points(a, b)? {
            Sign::Equal => lex_cmp(points.point(a), points.point(b)),
            s => s.to_ordering(),
        })
    })?;
    Ok(SieveResult {
        index: sorted[0],
        comparisons: cmp.comparisons() - start,
        rounds,
    })
}
