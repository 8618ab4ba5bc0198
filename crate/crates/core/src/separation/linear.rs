// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Linear matroids and the exact determinant generating polynomial
//! `P(x) = det(sum_i x^(c_i) v_i v_i^T)`, whose support is the set of basis
//! costs (Cauchy-Binet).

use std::collections::BTreeMap;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{det_rational, parse_rational, rank_rational, Rat};
use crate::oracle::{k_subsets, FeasibleFamily};

/// Matroid represented by the columns of a `k x n` rational matrix of rank `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearMatroid {
    k: usize,
    /// Columns `v_1..v_n`, each of length `k`.
    cols: Vec<Vec<Rat>>,
}

impl LinearMatroid {
    /// Builds from `k` rows of length `n`.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        if rank_rational(&rows) != k {
            return Err(Error::NotAMatroid(format!(
                "representation has rank below {k}"
            )));
        }
        let cols = (0..n)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Ok(Self { k, cols })
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// Rank-`k` uniform matroid on `n` elements as a Vandermonde matrix with
    /// nodes `1..=n`; every `k` columns are independent.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidArgument(format!(
                "rank {k} exceeds {n} elements"
            )));
        }
        let rows = (0..k)
            .map(|p| {
                (1..=n)
                    .map(|x| Rat::from_integer(BigInt::from(x).pow(p as u32)))
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    /// Parses `"k n"` followed by `k` rows of `n` rationals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tok = text.split_whitespace();
        let mut next_usize = |what: &str| -> Result<usize> {
            tok.next()
                .ok_or_else(|| Error::Parse(format!("missing {what}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
        };
        let k = next_usize("k")?;
        let n = next_usize("n")?;
        let vals: Vec<&str> = text.split_whitespace().skip(2).collect();
        if vals.len() != k * n {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                k * n,
                vals.len()
            )));
        }
        let rows = vals
            .chunks(n.max(1))
            .take(k)
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if n == 0 {
            return Self::from_rows(vec![Vec::new(); k]);
        }
        Self::from_rows(rows)
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn columns(&self) -> &[Vec<Rat>] {
        &self.cols
    }

    /// `det(V_S)` for a `k`-subset `S`.
    pub fn det(&self, s: &[usize]) -> Rat {
        let m: Vec<Vec<Rat>> = (0..self.k)
            .map(|r| s.iter().map(|&j| self.cols[j][r].clone()).collect())
            .collect();
        det_rational(&m)
    }

    pub fn is_independent(&self, s: &[usize]) -> bool {
        if s.len() > self.k || s.iter().any(|&j| j >= self.len()) {
            return false;
        }
        let rows: Vec<Vec<Rat>> = s.iter().map(|&j| self.cols[j].clone()).collect();
        rank_rational(&rows) == s.len()
    }

    pub fn is_basis(&self, s: &[usize]) -> bool {
        s.len() == self.k && s.windows(2).all(|w| w[0] < w[1]) && self.is_independent(s)
    }

    /// All bases, in lexicographic order of their element lists.
    pub fn bases(&self) -> Vec<Vec<usize>> {
        k_subsets(self.len(), self.k)
            .into_iter()
            .filter(|s| !self.det(s).is_zero())
            .collect()
    }

    /// The basis with lexicographically smallest indicator (element 0 most
    /// significant): greedy from the highest index.
    pub fn lex_first_basis(&self) -> Vec<usize> {
        let mut s: Vec<usize> = Vec::new();
        for j in (0..self.len()).rev() {
            let mut t = s.clone();
            t.push(j);
            if self.is_independent(&t) {
                s = t;
            }
        }
        s.sort_unstable();
        s
    }
}

impl FeasibleFamily for LinearMatroid {
    fn ground_size(&self) -> usize {
        self.len()
    }

    fn contains(&self, s: &[usize]) -> bool {
        self.is_basis(s)
    }

    fn enumerate(&self) -> Option<Vec<Vec<usize>>> {
        Some(self.bases())
    }
}

/// Sum of costs over `s`.
pub fn cost_of(costs: &[BigInt], s: &[usize]) -> BigInt {
    s.iter().map(|&i| &costs[i]).sum()
}

/// Sum of the `k` largest costs; bounds every basis cost.
pub fn max_basis_cost(costs: &[BigInt], k: usize) -> BigInt {
    let mut c = costs.to_vec();
    c.sort_unstable_by(|a, b| b.cmp(a));
    c.into_iter().take(k).sum()
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CostPolynomial {
    pub terms: BTreeMap<u64, Rat>,
}

impl CostPolynomial {
    pub fn support(&self) -> Vec<u64> {
        self.terms.keys().copied().collect()
    }

    pub fn coefficient(&self, e: u64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }
}

/// Default cap on the interpolation degree of plain mode.
pub const DEFAULT_PLAIN_CAP: u64 = 400;

fn costs_u64(costs: &[BigInt], k: usize, cap: u64) -> Result<(Vec<u64>, u64)> {
    if let Some(c) = costs.iter().find(|c| c.is_negative()) {
        return Err(Error::OutOfRange {
            value: c.to_string(),
            bound: "nonnegative".into(),
        });
    }
    let d = max_basis_cost(costs, k);
    match d.to_u64() {
        Some(d) if d <= cap => Ok((
            costs
                .iter()
                .map(|c| c.to_u64().unwrap_or(u64::MAX))
                .collect(),
            d,
        )),
        _ => Err(Error::DegreeOverflow {
            degree: d.to_string(),
            cap,
        }),
    }
}

fn eval_det(cols: &[Vec<Rat>], k: usize, costs: &[u64], x: &BigInt) -> Rat {
    let mut m = vec![vec![Rat::zero(); k]; k];
    for (v, &c) in cols.iter().zip(costs) {
        let xc = Rat::from_integer(x.pow(c as u32));
        for a in 0..k {
            if v[a].is_zero() {
                continue;
            }
            let va = &v[a] * &xc;
            for b in 0..k {
                if !v[b].is_zero() {
                    m[a][b] += &va * &v[b];
                }
            }
        }
    }
    det_rational(&m)
}

/// Coefficients of the degree-`<= d` polynomial through `(j, ys[j-1])`,
/// `j = 1..=d+1`, via Newton divided differences.
fn interpolate(ys: &[Rat]) -> Vec<Rat> {
    let m = ys.len();
    let xs: Vec<Rat> = (1..=m)
        .map(|j| Rat::from_integer(BigInt::from(j)))
        .collect();
    let mut dd = ys.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner expansion of the Newton form.
    let mut coef = vec![Rat::zero(); m];
    for i in (0..m).rev() {
        // coef = coef * (x - xs[i]) + dd[i]
        let mut next = vec![Rat::zero(); m];
        for d in 0..m {
            if coef[d].is_zero() {
                continue;
            }
            if d + 1 < m {
                next[d + 1] += &coef[d];
            }
            next[d] -= &coef[d] * &xs[i];
        }
        next[0] += &dd[i];
        coef = next;
    }
    coef
}

fn plain_poly(cols: &[Vec<Rat>], k: usize, costs: &[u64], d: u64) -> CostPolynomial {
    let ys: Vec<Rat> = (1..=d + 1)
        .map(|x| eval_det(cols, k, costs, &BigInt::from(x)))
        .collect();
    let coef = interpolate(&ys);
    CostPolynomial {
        terms: coef
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c))
            .collect(),
    }
}

/// Exact `P(x)` by evaluation at `1..=D+1` and interpolation, where `D` is
/// the largest possible basis cost.
pub fn basis_cost_polynomial(
    m: &LinearMatroid,
    costs: &[BigInt],
    cap: u64,
) -> Result<CostPolynomial> {
    check_len(m, costs)?;
    let (c, d) = costs_u64(costs, m.rank(), cap)?;
    Ok(plain_poly(m.columns(), m.rank(), &c, d))
}

fn check_len(m: &LinearMatroid, costs: &[BigInt]) -> Result<()> {
    if costs.len() != m.len() {
        return Err(Error::DimensionMismatch {
            expected: m.len(),
            found: costs.len(),
        });
    }
    Ok(())
}

/// Smallest basis cost outside `z`, or `None` when every basis cost is in `z`.
pub fn matroid_separate_plain(
    m: &LinearMatroid,
    costs: &[BigInt],
    z: &[BigInt],
    cap: u64,
) -> Result<Option<BigInt>> {
    let p = basis_cost_polynomial(m, costs, cap)?;
    let z: HashSet<&BigInt> = z.iter().collect();
    Ok(p.support()
        .into_iter()
        .map(BigInt::from)
        .find(|e| !z.contains(e)))
}

/// Quotient representation after selecting `v_j`: eliminate a pivot
/// coordinate of `v_j` from every other column and drop that row.
pub(crate) fn contract_rat(cols: &[Vec<Rat>], j: usize) -> Option<Vec<Vec<Rat>>> {
    let r = cols[j].iter().position(|x| !x.is_zero())?;
    let piv = cols[j][r].clone();
    Some(
        cols.iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, u)| {
                let f = &u[r] / &piv;
                (0..u.len())
                    .filter(|&a| a != r)
                    .map(|a| &u[a] - &f * &cols[j][a])
                    .collect()
            })
            .collect(),
    )
}

/// A basis of cost exactly `t`, found by deletion and contraction.
pub fn witness_basis(
    m: &LinearMatroid,
    costs: &[BigInt],
    t: &BigInt,
    cap: u64,
) -> Result<Vec<usize>> {
    check_len(m, costs)?;
    let (c, _) = costs_u64(costs, m.rank(), cap)?;
    let fail = || Error::WitnessNotFound(format!("no basis of cost {t}"));
    let mut target = t.to_u64().ok_or_else(fail)?;
    let mut cols: Vec<Vec<Rat>> = m.columns().to_vec();
    let mut ids: Vec<usize> = (0..m.len()).collect();
    let mut k = m.rank();
    let mut chosen = Vec::new();
    // Each step decides the first remaining element.
    let pos = 0;
    while pos < ids.len() && k > 0 {
        let del_cols: Vec<Vec<Rat>> = cols
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, v)| v.clone())
            .collect();
        let del_costs: Vec<u64> = ids
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &e)| c[e])
            .collect();
        let d = top_sum(&del_costs, k);
        let keeps = d >= target
            && !plain_poly(&del_cols, k, &del_costs, d)
                .coefficient(target)
                .is_zero();
        if keeps {
            cols = del_cols;
            ids.remove(pos);
        } else {
            let e = ids[pos];
            if c[e] > target {
                return Err(fail());
            }
            cols = contract_rat(&cols, pos).ok_or_else(fail)?;
            ids.remove(pos);
            chosen.push(e);
            target -= c[e];
            k -= 1;
        }
    }
    chosen.sort_unstable();
    if m.is_basis(&chosen) && cost_of(costs, &chosen) == *t {
        Ok(chosen)
    } else {
        Err(fail())
    }
}

fn top_sum(c: &[u64], k: usize) -> u64 {
    let mut v = c.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.into_iter().take(k).sum()
}

/// Brute-force map from basis cost to `sum det(V_S)^2` over bases of that cost.
pub fn brute_force_cost_coefficients(m: &LinearMatroid, costs: &[BigInt]) -> BTreeMap<BigInt, Rat> {
    let mut out: BTreeMap<BigInt, Rat> = BTreeMap::new();
    for s in k_subsets(m.len(), m.rank()) {
        let d = m.det(&s);
        if !d.is_zero() {
            *out.entry(cost_of(costs, &s)).or_insert_with(Rat::zero) += &d * &d;
        }
    }
    out
}
