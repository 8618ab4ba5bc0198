// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Subspace learning for sorting all feasible sets under bounded integer
//! weights.
//!
//! The state is a list of buckets (weight classes, each with a
//! representative) and the subspace `A` spanned by differences of
//! same-weight indicators. Since `A` is orthogonal to the hidden weights, a
//! set `x` with `x - r_i` in `A` has the weight of `r_i`. A separator proposes
//! a set whose class cannot be inferred yet; binary search over the
//! representatives either places it in an existing bucket, growing `A`, or
//! opens a new bucket. Each step raises `dim A + #buckets` by one, so the
//! number of steps is at most `(n - 1) + (2nB + 1)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{rat, Rat, RationalSpan};
use crate::oracle::{cmp_indicator, indicator, FeasibleFamily, SetOracle, Sign};

/// One weight class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bucket {
    /// Sets inserted into this class; the first is the representative.
    pub members: Vec<Vec<usize>>,
}

impl Bucket {
    pub fn representative(&self) -> &[usize] {
        &self.members[0]
    }
}

#[derive(Debug, Clone)]
pub struct GslState {
    n: usize,
    ordered: bool,
    buckets: Vec<Bucket>,
    basis: Vec<Vec<i64>>,
    span: RationalSpan,
    rep_forms: Vec<Vec<Rat>>,
    steps: usize,
}

fn ind_rat(n: usize, s: &[usize]) -> Vec<Rat> {
    indicator(n, s).into_iter().map(|b| rat(b as i64)).collect()
}

impl GslState {
    fn start(n: usize, first: Vec<usize>, ordered: bool) -> Self {
        let mut st = Self {
            n,
            ordered,
            buckets: vec![Bucket {
                members: vec![first],
            }],
            basis: Vec::new(),
            span: RationalSpan::new(n),
            rep_forms: Vec::new(),
            steps: 1,
        };
        st.refresh_forms();
        st
    }

    fn refresh_forms(&mut self) {
        self.rep_forms = self
            .buckets
            .iter()
            .map(|b| self.span.normal_form(&ind_rat(self.n, b.representative())))
            .collect();
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Whether bucket positions follow weight order (false after the
    /// equality-only variant).
    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn buckets(&self) -> &[Bucket] {
        &self.buckets
    }

    pub fn representatives(&self) -> Vec<&[usize]> {
        self.buckets.iter().map(Bucket::representative).collect()
    }

    /// Integer spanning directions of the learned subspace, each a
    /// difference `1_S - 1_T` of two same-weight sets.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim A + number of buckets`.
    pub fn potential(&self) -> usize {
        self.dim() + self.buckets.len()
    }

    /// Separator points inserted, counting the first one.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn subspace_contains(&self, v: &[i64]) -> bool {
        self.span.contains_int(v)
    }

    /// Position of the bucket whose weight `s` is known to have.
    pub fn classify(&self, s: &[usize]) -> Option<usize> {
        let f = self.span.normal_form(&ind_rat(self.n, s));
        self.rep_forms.iter().position(|r| *r == f)
    }

    fn join(&mut self, i: usize, y: Vec<usize>) -> Result<()> {
        let r = self.buckets[i].representative();
        let dir: Vec<i64> = indicator(self.n, &y)
            .iter()
            .zip(indicator(self.n, r))
            .map(|(&a, b)| a as i64 - b as i64)
            .collect();
        if !self.span.insert_int(&dir) {
            return Err(Error::SeparatorInconsistent);
        }
        self.basis.push(dir);
        self.buckets[i].members.push(y);
        self.refresh_forms();
        Ok(())
    }

    fn open(&mut self, at: usize, y: Vec<usize>) {
        let form = self.span.normal_form(&ind_rat(self.n, &y));
        self.buckets.insert(at, Bucket { members: vec![y] });
        self.rep_forms.insert(at, form);
    }

    pub fn export(&self) -> GslExport {
        GslExport {
            n: self.n,
            ordered: self.ordered,
            buckets: self
                .buckets
                .iter()
                .map(|b| b.members.iter().map(|m| indicator(self.n, m)).collect())
                .collect(),
            basis: self.basis.clone(),
            order: (0..self.buckets.len()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.export()).expect("state serializes")
    }

    /// Rebuilds a state for classification only.
    pub fn from_json(s: &str) -> Result<Self> {
        let e: GslExport = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::import(e)
    }

    pub fn import(e: GslExport) -> Result<Self> {
        let n = e.n;
        if e.buckets.is_empty() || e.buckets.iter().any(|b| b.is_empty()) {
            return Err(Error::Parse("every bucket needs a representative".into()));
        }
        if e.order.len() != e.buckets.len() {
            return Err(Error::Parse("order must list every bucket".into()));
        }
        let mut span = RationalSpan::new(n);
        for v in &e.basis {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            span.insert_int(v);
        }
        let mut buckets = Vec::with_capacity(e.buckets.len());
        for &pos in &e.order {
            let b = e
                .buckets
                .get(pos)
                .ok_or_else(|| Error::Parse(format!("bad bucket index {pos}")))?;
            let members = b
                .iter()
                .map(|x| {
                    if x.len() != n || x.iter().any(|&v| v > 1) {
                        Err(Error::Parse("indicator has wrong length or entries".into()))
                    } else {
                        Ok(crate::oracle::support(x))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            buckets.push(Bucket { members });
        }
        let steps = buckets.iter().map(|b| b.members.len()).sum();
        let mut st = Self {
            n,
            ordered: e.ordered,
            buckets,
            basis: e.basis,
            span,
            rep_forms: Vec::new(),
            steps,
        };
        st.refresh_forms();
        Ok(st)
    }
}

/// Serialized form of a [`GslState`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GslExport {
    pub n: usize,
    pub ordered: bool,
    pub buckets: Vec<Vec<Vec<u8>>>,
    pub basis: Vec<Vec<i64>>,
    pub order: Vec<usize>,
}

/// Source of sets whose weight class is not yet inferable.
pub trait Separator {
    /// The lexicographically smallest feasible indicator, or `None` if the
    /// family is empty.
    fn first_point(&mut self) -> Result<Option<Vec<usize>>>;

    /// A feasible set that `state.classify` does not place, or `None` when
    /// every feasible set is classified.
    fn next_point(&mut self, state: &GslState) -> Result<Option<Vec<usize>>>;
}

/// Separator that scans a full enumeration of the family.
pub struct EnumerationSeparator {
    n: usize,
    sets: Vec<Vec<usize>>,
    cursor: usize,
}

impl EnumerationSeparator {
    pub fn new<F: FeasibleFamily + ?Sized>(family: &F) -> Result<Self> {
        let n = family.ground_size();
        let mut sets = family.enumerate().ok_or(Error::NotEnumerable)?;
        sets.sort_by(|a, b| cmp_indicator(n, a, b).reverse());
        Ok(Self { n, sets, cursor: 0 })
    }
}

impl Separator for EnumerationSeparator {
    fn first_point(&mut self) -> Result<Option<Vec<usize>>> {
        // Sorted by decreasing indicator, so the smallest is last.
        Ok(self.sets.last().cloned())
    }

    fn next_point(&mut self, state: &GslState) -> Result<Option<Vec<usize>>> {
        // Classification is monotone, so sets skipped once stay classified.
        let _ = self.n;
        while self.cursor < self.sets.len() {
            let s = &self.sets[self.cursor];
            if state.classify(s).is_none() {
                return Ok(Some(s.clone()));
            }
            self.cursor += 1;
        }
        Ok(None)
    }
}

fn first<S: Separator + ?Sized>(sep: &mut S) -> Result<Vec<usize>> {
    sep.first_point()?.ok_or(Error::EmptyPointSet)
}

/// Runs subspace learning with three-way comparisons.
pub fn gsl_run<F: FeasibleFamily, S: Separator + ?Sized>(
    oracle: &mut SetOracle<F>,
    sep: &mut S,
) -> Result<GslState> {
    let n = oracle.ground_size();
    let mut st = GslState::start(n, first(sep)?, true);
    while let Some(y) = sep.next_point(&st)? {
        if st.classify(&y).is_some() {
            return Err(Error::SeparatorInconsistent);
        }
        let before = st.potential();
        let (mut lo, mut hi) = (0, st.buckets.len());
        let mut joined = None;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match oracle.compare(&y, st.buckets[mid].representative())? {
                Sign::Equal => {
                    joined = Some(mid);
                    break;
                }
                Sign::Less => hi = mid,
                Sign::Greater => lo = mid + 1,
            }
        }
        match joined {
            Some(i) => st.join(i, y)?,
            None => st.open(lo, y),
        }
        st.steps += 1;
        assert_eq!(
            st.potential(),
            before + 1,
            "every step raises the potential by one"
        );
    }
    Ok(st)
}

/// Runs subspace learning with equality queries only; buckets end up in
/// discovery order.
pub fn gsl_run_equality_only<F: FeasibleFamily, S: Separator + ?Sized>(
    oracle: &mut SetOracle<F>,
    sep: &mut S,
) -> Result<GslState> {
    let n = oracle.ground_size();
    let mut st = GslState::start(n, first(sep)?, false);
    while let Some(y) = sep.next_point(&st)? {
        if st.classify(&y).is_some() {
            return Err(Error::SeparatorInconsistent);
        }
        let before = st.potential();
        let mut joined = None;
        for i in 0..st.buckets.len() {
            if oracle.compare_equality(&y, st.buckets[i].representative())? {
                joined = Some(i);
                break;
            }
        }
        match joined {
            Some(i) => st.join(i, y)?,
            None => {
                let at = st.buckets.len();
                st.open(at, y);
            }
        }
        st.steps += 1;
        assert_eq!(
            st.potential(),
            before + 1,
            "every step raises the potential by one"
        );
    }
    Ok(st)
}

/// Test-harness check that every learned direction is orthogonal to `w`.
pub fn directions_orthogonal(state: &GslState, w: &[Rat]) -> bool {
    state.basis().iter().all(|v| {
        v.iter()
            .zip(w)
            .map(|(&a, b)| rat(a) * b)
            .fold(Rat::zero(), |acc, x| acc + x)
            .is_zero()
    })
}
