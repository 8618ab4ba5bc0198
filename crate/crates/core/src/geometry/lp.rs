// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact cone membership by Phase I simplex with Bland's rule.
//!
//! Vectors are first scaled to integers (positive scaling does not change a
//! cone) and the tableau is pivoted fraction-free over checked `i128`, so
//! every stored entry is an integer minor of the input. If an entry
//! overflows, the same algorithm is rerun over `BigRational`. Both paths are
//! exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, PrimInt, Signed, ToPrimitive, Zero};

use crate::numeric::Rat;

/// Result of a cone membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeMembership {
    /// Nonnegative coefficients `alpha` with `sum alpha_j v_j = x`.
    Member(Vec<Rat>),
    /// A functional `h` with `<h, v> >= 0` for every generator and `<h, x> < 0`.
    Separated(Vec<Rat>),
}

impl ConeMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, ConeMembership::Member(_))
    }
}

/// Scales `v` by the lcm of its denominators; `None` if it does not fit.
fn integerize(v: &[Rat]) -> Option<(Vec<i128>, i128)> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = l.to_i128()?;
    let out = v
        .iter()
        .map(|x| (x.numer() * (&l / x.denom())).to_i128())
        .collect::<Option<Vec<_>>>()?;
    Some((out, scale))
}

fn r128(n: i128, d: i128) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Machine integers usable for the fraction-free tableau.
trait Word: PrimInt + Signed + Into<i128> {
    fn from_i128(x: i128) -> Option<Self>;
}

impl Word for i64 {
    fn from_i128(x: i128) -> Option<Self> {
        i64::try_from(x).ok()
    }
}

impl Word for i128 {
    fn from_i128(x: i128) -> Option<Self> {
        Some(x)
    }
}

/// Fraction-free Phase I on integer data. `None` on overflow.
fn phase_one_int<T: Word>(x: &[i128], gens: &[Vec<i128>]) -> Option<(bool, Vec<Rat>)> {
    let d = x.len();
    let m = gens.len();
    let ncol = m + d;
    let conv = |v: i128| T::from_i128(v);
    let mut a: Vec<Vec<T>> = Vec::with_capacity(d + 1);
    for i in 0..d {
        let s = if x[i] < 0 { -1 } else { 1 };
        let mut row = Vec::with_capacity(ncol + 1);
        for g in gens {
            row.push(conv(s * g[i])?);
        }
        row.extend((0..d).map(|j| if i == j { T::one() } else { T::zero() }));
        row.push(conv(s * x[i])?);
        a.push(row);
    }
    let mut obj = vec![T::zero(); ncol + 1];
    for (j, o) in obj.iter_mut().enumerate() {
        let mut s = T::zero();
        for row in &a {
            s = s.checked_add(&row[j])?;
        }
        let c = if j >= m && j < ncol {
            T::one()
        } else {
            T::zero()
        };
        *o = c.checked_sub(&s)?;
    }
    a.push(obj);
    let mut basis: Vec<usize> = (m..ncol).collect();
    let mut den = T::one();

    while let Some(enter) = (0..ncol).find(|&j| a[d][j] < T::zero()) {
        let mut leave: Option<usize> = None;
        for i in 0..d {
            if a[i][enter] <= T::zero() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    // b_i / a_ie versus b_l / a_le, both denominators positive.
                    let lhs = a[i][ncol].checked_mul(&a[l][enter])?;
                    let rhs = a[l][ncol].checked_mul(&a[i][enter])?;
                    if lhs < rhs || (lhs == rhs && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let r = leave?;
        let p = a[r][enter];
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[enter];
            for (v, &q) in row.iter_mut().zip(&prow) {
                let t = v.checked_mul(&p)?.checked_sub(&f.checked_mul(&q)?)?;
                debug_assert!((t % den).is_zero());
                *v = if den == T::one() { t } else { t / den };
            }
        }
        den = p;
        basis[r] = enter;
    }

    let obj = &a[d];
    let den: i128 = den.into();
    if obj[ncol].is_zero() {
        let mut alpha = vec![Rat::zero(); m];
        for (i, &b) in basis.iter().enumerate() {
            if b < m {
                alpha[b] = r128(a[i][ncol].into(), den);
            }
        }
        Some((true, alpha))
    } else {
        // y_i = 1 - (reduced cost of artificial i); h = -y with rows unflipped.
        let h = (0..d)
            .map(|i| {
                let y = Rat::one() - r128(obj[m + i].into(), den);
                if x[i] < 0 {
                    y
                } else {
                    -y
                }
            })
            .collect();
        Some((false, h))
    }
}

/// The same Phase I over big rationals.
fn phase_one_rat(x: &[Rat], gens: &[Vec<Rat>]) -> (bool, Vec<Rat>) {
    let d = x.len();
    let m = gens.len();
    let ncol = m + d;
    let flip: Vec<bool> = x.iter().map(Signed::is_negative).collect();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row = Vec::with_capacity(ncol + 1);
        for g in gens {
            row.push(if flip[i] { -&g[i] } else { g[i].clone() });
        }
        row.extend((0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        row.push(if flip[i] { -&x[i] } else { x[i].clone() });
        a.push(row);
    }
    let mut obj = Vec::with_capacity(ncol + 1);
    for j in 0..=ncol {
        let s: Rat = a.iter().map(|row| &row[j]).sum();
        let c = if j >= m && j < ncol {
            Rat::one()
        } else {
            Rat::zero()
        };
        obj.push(c - s);
    }
    a.push(obj);
    let mut basis: Vec<usize> = (m..ncol).collect();

    while let Some(enter) = (0..ncol).find(|&j| a[d][j].is_negative()) {
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..d {
            if !a[i][enter].is_positive() {
                continue;
            }
            let ratio = &a[i][ncol] / &a[i][enter];
            let better = match &leave {
                None => true,
                Some((l, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave.expect("Phase I objective is bounded below");
        let piv = a[r][enter].clone();
        for v in a[r].iter_mut() {
            *v /= &piv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, q) in row.iter_mut().zip(&prow) {
                if !q.is_zero() {
                    *v -= &f * q;
                }
            }
        }
        basis[r] = enter;
    }

    let obj = &a[d];
    if obj[ncol].is_zero() {
        let mut alpha = vec![Rat::zero(); m];
        for (i, &b) in basis.iter().enumerate() {
            if b < m {
                alpha[b] = a[i][ncol].clone();
            }
        }
        (true, alpha)
    } else {
        let h = (0..d)
            .map(|i| {
                let y = Rat::one() - &obj[m + i];
                if flip[i] {
                    y
                } else {
                    -y
                }
            })
            .collect();
        (false, h)
    }
}

/// Cone membership tests against a fixed generator set.
pub struct ConeTester {
    gens: Vec<Vec<Rat>>,
    int_gens: Option<(Vec<Vec<i128>>, Vec<i128>)>,
}

impl ConeTester {
    pub fn new(gens: Vec<Vec<Rat>>) -> Self {
        let int_gens = gens
            .iter()
            .map(|g| integerize(g))
            .collect::<Option<Vec<_>>>()
            .map(|v| v.into_iter().unzip());
        Self { gens, int_gens }
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.gens
    }

    pub fn test(&self, x: &[Rat]) -> ConeMembership {
        if x.iter().all(Zero::is_zero) {
            return ConeMembership::Member(vec![Rat::zero(); self.gens.len()]);
        }
        if let (Some((ig, scales)), Some((ix, xs))) = (&self.int_gens, integerize(x)) {
            let fast = phase_one_int::<i64>(&ix, ig).or_else(|| phase_one_int::<i128>(&ix, ig));
            if let Some((member, v)) = fast {
                let out = if member {
                    // xs * x = sum alpha_j * scale_j * g_j.
                    let xs = r128(xs, 1);
                    ConeMembership::Member(
                        v.into_iter()
                            .zip(scales)
                            .map(|(a, &s)| a * r128(s, 1) / &xs)
                            .collect(),
                    )
                } else {
                    ConeMembership::Separated(v)
                };
                return out;
            }
        }
        let (member, v) = phase_one_rat(x, &self.gens);
        let out = if member {
            ConeMembership::Member(v)
        } else {
            ConeMembership::Separated(v)
        };
        out
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.test(x).is_member()
    }
}

/// Exact test of `x in cone(gens)`, with a certificate either way.
///
/// All vectors must have the same length; callers check dimensions.
pub fn cone_membership(x: &[Rat], gens: &[Vec<Rat>]) -> ConeMembership {
    ConeTester::new(gens.to_vec()).test(x)
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Checks a certificate returned by [`cone_membership`].
pub fn verify(x: &[Rat], gens: &[Vec<Rat>], c: &ConeMembership) -> bool {
    match c {
        ConeMembership::Member(alpha) => {
            if alpha.len() != gens.len() || alpha.iter().any(Signed::is_negative) {
                return false;
            }
            (0..x.len()).all(|i| {
                let s: Rat = alpha.iter().zip(gens).map(|(a, g)| a * &g[i]).sum();
                s == x[i]
            })
        }
        ConeMembership::Separated(h) => {
            h.len() == x.len()
                && gens.iter().all(|g| !dot(h, g).is_negative())
                && dot(h, x).is_negative()
        }
    }
}
