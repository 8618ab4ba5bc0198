// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic helpers shared by the solvers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_abs = int.trim_start_matches(['-', '+']);
        let int_abs: BigInt = if int_abs.is_empty() {
            BigInt::zero()
        } else {
            int_abs.parse().map_err(|_| bad())?
        };
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut v = Rat::new(int_abs * &scale + frac_val, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(p))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Smallest `c` with `2^c >= x`; `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

pub fn log2f(x: f64) -> f64 {
    x.max(1.0).log2()
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn det_rational(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det_integer(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of a rational matrix given as rows.
pub fn rank_rational(rows: &[Vec<Rat>]) -> usize {
    let mut span = RationalSpan::new(rows.first().map_or(0, |r| r.len()));
    rows.iter().filter(|r| span.insert(r)).count()
}

/// Incrementally maintained row space over the rationals, kept in reduced
/// row echelon form so that membership is a single reduction pass.
#[derive(Clone, Debug)]
pub struct RationalSpan {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RationalSpan {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduction of `v` modulo the span; equal for `u`, `v` iff `u - v` lies in
    /// the span.
    pub fn normal_form(&self, v: &[Rat]) -> Vec<Rat> {
        self.reduce(v)
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_int(&self, v: &[i64]) -> bool {
        let v: Vec<Rat> = v.iter().map(|&x| rat(x)).collect();
        self.contains(&v)
    }

    /// Adds `v`; returns false (and leaves the span unchanged) when `v` is
    /// already in the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn insert_int(&mut self, v: &[i64]) -> bool {
        let v: Vec<Rat> = v.iter().map(|&x| rat(x)).collect();
        self.insert(&v)
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator(xs: &[Rat]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to integers by the lcm of its denominators.
pub fn to_integer_vector(xs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let d = common_denominator(xs);
    let v = xs
        .iter()
        .map(|x| (x * Rat::from_integer(d.clone())).to_integer())
        .collect();
    (v, d)
}

pub fn bigint_to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

pub fn abs_max(xs: &[BigInt]) -> BigInt {
    xs.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}
