// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Decision and sorting problems solved by subspace learning: k-SUM,
//! SUBSET-SUM and sorting `A + B`.
//!
//! Each problem sorts (or partitions) the weight classes of its feasible
//! family, then locates the target among class representatives.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gsl::{gsl_run, gsl_run_equality_only, GslState, Separator};
use crate::numeric::{rat, Rat};
use crate::oracle::{k_subsets, FeasibleFamily, KSubsets, Powerset, QueryCounts, SetOracle, Sign};
use crate::separation::{Backend, LinearMatroid, MatroidSeparator, PowersetSeparator};

/// Which queries the solver may ask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryMode {
    /// Three-way comparisons between feasible sets and against constants.
    #[default]
    Comparison,
    /// Equality tests only.
    EqualityOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub answer: bool,
    /// A feasible set attaining the target, when the answer is yes.
    pub witness: Option<Vec<usize>>,
    pub classes: usize,
    pub steps: usize,
    pub queries: QueryCounts,
}

fn learn<F: FeasibleFamily, S: Separator>(
    oracle: &mut SetOracle<F>,
    sep: &mut S,
    mode: QueryMode,
) -> Result<GslState> {
    match mode {
        QueryMode::Comparison => gsl_run(oracle, sep),
        QueryMode::EqualityOnly => gsl_run_equality_only(oracle, sep),
    }
}

/// Finds a class of weight `t`: binary search over ordered classes with
/// constant comparisons, or one equality test per class.
fn locate<F: FeasibleFamily>(
    oracle: &mut SetOracle<F>,
    st: &GslState,
    t: &Rat,
) -> Result<Option<Vec<usize>>> {
    let reps: Vec<Vec<usize>> = st.representatives().iter().map(|r| r.to_vec()).collect();
    if st.is_ordered() {
        let (mut lo, mut hi) = (0, reps.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match oracle.compare_constant(&reps[mid], t)? {
                Sign::Equal => return Ok(Some(reps[mid].clone())),
                Sign::Less => lo = mid + 1,
                Sign::Greater => hi = mid,
            }
        }
        Ok(None)
    } else {
        for r in reps {
            if oracle.equals_constant(&r, t)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }
}

fn decision<F: FeasibleFamily>(
    oracle: &SetOracle<F>,
    st: &GslState,
    witness: Option<Vec<usize>>,
) -> Decision {
    Decision {
        answer: witness.is_some(),
        witness,
        classes: st.buckets().len(),
        steps: st.steps(),
        queries: oracle.counts(),
    }
}

/// Whether some `k` distinct elements have weight sum zero.
pub fn ksum_decide(
    oracle: &mut SetOracle<KSubsets>,
    mode: QueryMode,
    seed: u64,
) -> Result<Decision> {
    let KSubsets { n, k } = *oracle.family();
    let mut sep = MatroidSeparator::new(LinearMatroid::uniform(k, n)?, Backend::Auto, seed);
    let st = learn(oracle, &mut sep, mode)?;
    let w = locate(oracle, &st, &Rat::zero())?;
    Ok(decision(oracle, &st, w))
}

/// Whether some subset has weight exactly `t`.
pub fn subsetsum_decide(
    oracle: &mut SetOracle<Powerset>,
    t: &Rat,
    mode: QueryMode,
) -> Result<Decision> {
    let n = oracle.family().n;
    let st = learn(oracle, &mut PowersetSeparator::new(n), mode)?;
    let w = locate(oracle, &st, t)?;
    Ok(decision(oracle, &st, w))
}

/// Pairs `{a_i, b_j}`: elements `0..n` are `A`, elements `n..2n` are `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFamily {
    pub n: usize,
}

impl PairFamily {
    pub fn pair(&self, i: usize, j: usize) -> Vec<usize> {
        vec![i, self.n + j]
    }

    /// The partition matroid with parts `A` and `B`, capacity one each.
    pub fn matroid(&self) -> Result<LinearMatroid> {
        let n = self.n;
        LinearMatroid::from_rows(vec![
            (0..2 * n).map(|e| rat((e < n) as i64)).collect(),
            (0..2 * n).map(|e| rat((e >= n) as i64)).collect(),
        ])
    }
}

impl FeasibleFamily for PairFamily {
    fn ground_size(&self) -> usize {
        2 * self.n
    }

    fn contains(&self, s: &[usize]) -> bool {
        s.len() == 2 && s[0] < self.n && s[1] >= self.n && s[1] < 2 * self.n
    }

    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        Some(
            (0..self.n)
                .flat_map(|i| (0..self.n).map(move |j| vec![i, self.n + j]))
                .collect(),
        )
    }
}

/// Weight classes of `A + B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApbOrder {
    pub n: usize,
    /// `class[i][j]` is the class of `a_i + b_j`; classes are ranked by sum
    /// when `ordered`, and numbered in discovery order otherwise.
    pub class: Vec<Vec<usize>>,
    pub classes: usize,
    pub ordered: bool,
    pub steps: usize,
    pub queries: QueryCounts,
}

/// Sorts `A + B` with queries between pairs only.
pub fn apb_sort(
    oracle: &mut SetOracle<PairFamily>,
    mode: QueryMode,
    seed: u64,
) -> Result<ApbOrder> {
    let fam = *oracle.family();
    if fam.n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let mut sep = MatroidSeparator::new(fam.matroid()?, Backend::Auto, seed);
    let st = learn(oracle, &mut sep, mode)?;
    let class = (0..fam.n)
        .map(|i| {
            (0..fam.n)
                .map(|j| {
                    st.classify(&fam.pair(i, j))
                        .ok_or(Error::SeparatorInconsistent)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ApbOrder {
        n: fam.n,
        class,
        classes: st.buckets().len(),
        ordered: st.is_ordered(),
        steps: st.steps(),
        queries: oracle.counts(),
    })
}

/// Exhaustive k-SUM check for test harnesses.
pub fn brute_force_ksum(values: &[i64], k: usize) -> bool {
    k_subsets(values.len(), k)
        .iter()
        .any(|s| s.iter().map(|&i| values[i]).sum::<i64>() == 0)
}

/// Exhaustive SUBSET-SUM check for test harnesses.
pub fn brute_force_subsetsum(values: &[i64], t: i64) -> bool {
    let n = values.len();
    (0..1u64 << n).any(|m| {
        (0..n)
            .filter(|&i| m >> i & 1 == 1)
            .map(|i| values[i])
            .sum::<i64>()
            == t
    })
}

/// Sum of `values` over `s` as a big integer.
pub fn sum_of(values: &[i64], s: &[usize]) -> BigInt {
    s.iter().map(|&i| BigInt::from(values[i])).sum()
}
