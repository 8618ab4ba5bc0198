// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Hidden weights, feasible families and the comparison oracle.
//!
//! Solvers never see the weights. They hold a [`SetOracle`] and learn only
//! the sign of `w(S) - w(T)` (or equality, or the sign against a caller-chosen
//! constant). Every answered query is recorded in a [`QueryLedger`]; queries
//! on infeasible operands are rejected before they reach the ledger.

use std::cmp::Ordering;
use std::io::Write;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, rat, Rat};

/// Outcome of a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Less,
    Equal,
    Greater,
}

impl Sign {
    pub fn of<T: Ord>(a: &T, b: &T) -> Sign {
        a.cmp(b).into()
    }

    pub fn of_value(x: &Rat) -> Sign {
        if x.is_zero() {
            Sign::Equal
        } else if x.is_positive() {
            Sign::Greater
        } else {
            Sign::Less
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Less => -1,
            Sign::Equal => 0,
            Sign::Greater => 1,
        }
    }

    pub fn reverse(self) -> Sign {
        match self {
            Sign::Less => Sign::Greater,
            Sign::Equal => Sign::Equal,
            Sign::Greater => Sign::Less,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Less => Ordering::Less,
            Sign::Equal => Ordering::Equal,
            Sign::Greater => Ordering::Greater,
        }
    }
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Less,
            Ordering::Equal => Sign::Equal,
            Ordering::Greater => Sign::Greater,
        }
    }
}

/// Per-element weights, visible only to oracles and test harnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiddenWeights {
    w: Vec<Rat>,
    bound: Option<i64>,
}

impl HiddenWeights {
    pub fn new(w: Vec<Rat>) -> Self {
        Self { w, bound: None }
    }

    /// Integer mode: every entry must lie in `[-bound, bound]`.
    pub fn integer(w: &[i64], bound: i64) -> Result<Self> {
        if let Some(&x) = w.iter().find(|x| x.abs() > bound) {
            return Err(Error::WeightOutOfBound {
                value: x.to_string(),
                bound,
            });
        }
        Ok(Self {
            w: w.iter().map(|&x| rat(x)).collect(),
            bound: Some(bound),
        })
    }

    pub fn from_i64(w: &[i64]) -> Self {
        Self::new(w.iter().map(|&x| rat(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn bound(&self) -> Option<i64> {
        self.bound
    }

    pub fn values(&self) -> &[Rat] {
        &self.w
    }

    pub fn get(&self, e: usize) -> &Rat {
        &self.w[e]
    }

    pub fn weight(&self, s: &[usize]) -> Rat {
        s.iter().fold(Rat::zero(), |acc, &e| acc + &self.w[e])
    }

    /// Integer view; `None` if some entry is not an integer.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.w
            .iter()
            .map(|x| {
                if x.is_integer() {
                    x.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// 0/1 indicator of `s` in a ground set of size `n`.
pub fn indicator(n: usize, s: &[usize]) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for &e in s {
        v[e] = 1;
    }
    v
}

/// Inverse of [`indicator`].
pub fn support(x: &[u8]) -> Vec<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, &b)| b != 0)
        .map(|(i, _)| i)
        .collect()
}

/// Lexicographic order on indicator vectors (element 0 is most significant).
pub fn cmp_indicator(n: usize, a: &[usize], b: &[usize]) -> Ordering {
    indicator(n, a).cmp(&indicator(n, b))
}

/// True when `s` is strictly increasing with all entries below `n`.
pub fn is_canonical(n: usize, s: &[usize]) -> bool {
    s.windows(2).all(|w| w[0] < w[1]) && s.last().map_or(true, |&e| e < n)
}

/// A set system over the ground set `0..ground_size()`.
///
/// Sets are passed as strictly increasing element lists.
pub trait FeasibleFamily: Sync {
    fn ground_size(&self) -> usize;

    fn contains(&self, s: &[usize]) -> bool;

    /// All feasible sets, or `None` if the family cannot be listed.
    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        None
    }

    fn indicator(&self, s: &[usize]) -> Vec<u8> {
        indicator(self.ground_size(), s)
    }
}

impl<T: FeasibleFamily + ?Sized> FeasibleFamily for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn contains(&self, s: &[usize]) -> bool {
        (**self).contains(s)
    }
    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        (**self).enumerate()
    }
}

/// All subsets of the ground set.
#[derive(Debug, Clone, Copy)]
pub struct Powerset {
    pub n: usize,
}

impl FeasibleFamily for Powerset {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn contains(&self, s: &[usize]) -> bool {
        is_canonical(self.n, s)
    }
    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        if self.n > 24 {
            return None;
        }
        Some(
            (0u64..1 << self.n)
                .map(|m| mask_to_set(m, self.n))
                .collect(),
        )
    }
}

/// All subsets of size exactly `k`.
#[derive(Debug, Clone, Copy)]
pub struct KSubsets {
    pub n: usize,
    pub k: usize,
}

impl FeasibleFamily for KSubsets {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn contains(&self, s: &[usize]) -> bool {
        s.len() == self.k && is_canonical(self.n, s)
    }
    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        Some(k_subsets(self.n, self.k))
    }
}

/// A family given by an explicit list of sets.
#[derive(Debug, Clone)]
pub struct ExplicitFamily {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl ExplicitFamily {
    /// Sorts each set and removes duplicate sets.
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        for s in &sets {
            if !is_canonical(n, s) {
                return Err(Error::InvalidArgument(format!(
                    "set {s:?} is not a subset of 0..{n}"
                )));
            }
        }
        sets.sort();
        sets.dedup();
        Ok(Self { n, sets })
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }
}

impl FeasibleFamily for ExplicitFamily {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn contains(&self, s: &[usize]) -> bool {
        self.sets.binary_search_by(|x| x.as_slice().cmp(s)).is_ok()
    }
    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        Some(self.sets.clone())
    }
}

pub fn mask_to_set(m: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| m >> i & 1 == 1).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order of element lists.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Minimum-weight feasible set by exhaustive scan; ties go to the
/// lexicographically smallest indicator.
pub fn brute_force_argmin<F: FeasibleFamily + ?Sized>(
    family: &F,
    weights: &HiddenWeights,
) -> Result<Vec<usize>> {
    let sets = family.enumerate().ok_or(Error::NotEnumerable)?;
    let n = family.ground_size();
    let mut best: Option<(Rat, Vec<u8>, Vec<usize>)> = None;
    for s in sets {
        let w = weights.weight(&s);
        let ind = indicator(n, &s);
        let better = match &best {
            None => true,
            Some((bw, bi, _)) => w < *bw || (w == *bw && ind < *bi),
        };
        if better {
            best = Some((w, ind, s));
        }
    }
    best.map(|b| b.2).ok_or(Error::EmptyPointSet)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryKind {
    Compare,
    Equality,
    Constant,
    Marginal,
}

/// One side of a logged query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Operand {
    Set(Vec<usize>),
    Difference(Vec<usize>, Vec<usize>),
    Constant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub kind: QueryKind,
    pub lhs: Operand,
    pub rhs: Operand,
    pub answer: i8,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounts {
    pub compare: u64,
    pub equality: u64,
    pub constant: u64,
    pub marginal: u64,
}

impl QueryCounts {
    pub fn total(&self) -> u64 {
        self.compare + self.equality + self.constant + self.marginal
    }
}

/// Query counters plus an optional transcript.
#[derive(Debug, Clone)]
pub struct QueryLedger {
    counts: QueryCounts,
    transcript: Option<Vec<QueryRecord>>,
}

impl Default for QueryLedger {
    fn default() -> Self {
        Self::new()
    }
}

impl QueryLedger {
    pub fn new() -> Self {
        Self {
            counts: QueryCounts::default(),
            transcript: Some(Vec::new()),
        }
    }

    /// A ledger that keeps only counters (for long runs).
    pub fn counting_only() -> Self {
        Self {
            counts: QueryCounts::default(),
            transcript: None,
        }
    }

    pub fn counts(&self) -> QueryCounts {
        self.counts
    }

    pub fn transcript(&self) -> &[QueryRecord] {
        self.transcript.as_deref().unwrap_or(&[])
    }

    pub fn record(&mut self, kind: QueryKind, lhs: Operand, rhs: Operand, answer: Sign) {
        let index = self.counts.total() as usize;
        match kind {
            QueryKind::Compare => self.counts.compare += 1,
            QueryKind::Equality => self.counts.equality += 1,
            QueryKind::Constant => self.counts.constant += 1,
            QueryKind::Marginal => self.counts.marginal += 1,
        }
        if let Some(t) = &mut self.transcript {
            t.push(QueryRecord {
                kind,
                lhs,
                rhs,
                answer: answer.to_i8(),
                index,
            });
        }
    }

    /// Writes the transcript as JSON Lines.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in self.transcript() {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }
}

/// Comparison oracle over a feasible family with hidden weights.
pub struct SetOracle<F> {
    family: F,
    weights: HiddenWeights,
    ledger: QueryLedger,
}

impl<F: FeasibleFamily> SetOracle<F> {
    pub fn new(family: F, weights: HiddenWeights) -> Result<Self> {
        if weights.len() != family.ground_size() {
            return Err(Error::DimensionMismatch {
                expected: family.ground_size(),
                found: weights.len(),
            });
        }
        Ok(Self {
            family,
            weights,
            ledger: QueryLedger::new(),
        })
    }

    pub fn with_ledger(mut self, ledger: QueryLedger) -> Self {
        self.ledger = ledger;
        self
    }

    pub fn family(&self) -> &F {
        &self.family
    }

    pub fn ground_size(&self) -> usize {
        self.family.ground_size()
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn counts(&self) -> QueryCounts {
        self.ledger.counts()
    }

    /// Test-harness access to the hidden weights. Solvers must not call this.
    pub fn hidden_weights(&self) -> &HiddenWeights {
        &self.weights
    }

    pub fn bound(&self) -> Option<i64> {
        self.weights.bound()
    }

    fn check(&self, s: &[usize]) -> Result<()> {
        if self.family.contains(s) {
            Ok(())
        } else {
            Err(Error::InfeasibleQuery(s.to_vec()))
        }
    }

    /// `sign(w(S) - w(T))`.
    pub fn compare(&mut self, s: &[usize], t: &[usize]) -> Result<Sign> {
        self.check(s)?;
        self.check(t)?;
        let ans = Sign::of_value(&(self.weights.weight(s) - self.weights.weight(t)));
        self.ledger.record(
            QueryKind::Compare,
            Operand::Set(s.to_vec()),
            Operand::Set(t.to_vec()),
            ans,
        );
        Ok(ans)
    }

    /// Whether `w(S) = w(T)`.
    pub fn compare_equality(&mut self, s: &[usize], t: &[usize]) -> Result<bool> {
        self.check(s)?;
        self.check(t)?;
        let eq = self.weights.weight(s) == self.weights.weight(t);
        let ans = if eq { Sign::Equal } else { Sign::Greater };
        self.ledger.record(
            QueryKind::Equality,
            Operand::Set(s.to_vec()),
            Operand::Set(t.to_vec()),
            ans,
        );
        Ok(eq)
    }

    /// `sign(w(S) - t)`.
    pub fn compare_constant(&mut self, s: &[usize], t: &Rat) -> Result<Sign> {
        self.check(s)?;
        let ans = Sign::of_value(&(self.weights.weight(s) - t));
        self.ledger.record(
            QueryKind::Constant,
            Operand::Set(s.to_vec()),
            Operand::Constant(format_rational(t)),
            ans,
        );
        Ok(ans)
    }

    /// Whether `w(S) = t`; logged as an equality query.
    pub fn equals_constant(&mut self, s: &[usize], t: &Rat) -> Result<bool> {
        self.check(s)?;
        let eq = self.weights.weight(s) == *t;
        let ans = if eq { Sign::Equal } else { Sign::Greater };
        self.ledger.record(
            QueryKind::Equality,
            Operand::Set(s.to_vec()),
            Operand::Constant(format_rational(t)),
            ans,
        );
        Ok(eq)
    }
}
