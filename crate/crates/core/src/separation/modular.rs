// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Determinant-polynomial separation modulo `x^p - 1` over a prime field.
//!
//! `Q(x) = P(x) mod (x^p - 1)` is recovered from `P` at the `p`-th roots of
//! unity of `F_q`, `q = 1 + p t`. A residue class of `Q` that avoids the
//! residues of `Z` yields a basis whose exact cost avoids `Z`, found by
//! deletion and contraction on residues and then verified exactly.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::linear::{cost_of, max_basis_cost, LinearMatroid};
use crate::error::{Error, Result};
use crate::numeric::{ceil_log2, to_integer_vector};
use crate::par::{map_indexed, Execution};

fn mul(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, q);
        }
        a = mul(a, a, q);
        e >>= 1;
    }
    r
}

fn inv(a: u64, q: u64) -> u64 {
    pow(a, q - 2, q)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Random prime `q = 1 + p t` in `[2^60, 2^62)`.
pub fn random_field_prime<R: Rng + ?Sized>(p: u64, rng: &mut R) -> u64 {
    let lo = (1u64 << 60) / p + 1;
    let hi = ((1u64 << 62) - 1) / p;
    loop {
        let t = rng.gen_range(lo..hi);
        let q = 1 + p * t;
        if is_prime_u64(q) {
            return q;
        }
    }
}

/// Element of multiplicative order exactly `p` (prime) in `F_q`.
fn root_of_unity<R: Rng + ?Sized>(p: u64, q: u64, rng: &mut R) -> u64 {
    loop {
        let g = rng.gen_range(2..q - 1);
        let w = pow(g, (q - 1) / p, q);
        if w != 1 {
            return w;
        }
    }
}

fn reduce(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q))
        .to_u64()
        .expect("reduced below q")
}

/// `y^e` with `e` any integer, `y != 0`.
fn pow_big(y: u64, e: &BigInt, q: u64) -> u64 {
    let r = e
        .mod_floor(&BigInt::from(q - 1))
        .to_u64()
        .expect("reduced below q");
    pow(y, r, q)
}

/// Determinant over `F_q` by Gaussian elimination.
pub fn det_mod(mut m: Vec<Vec<u64>>, q: u64) -> u64 {
    let k = m.len();
    let mut det = 1u64;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            det = (q - det) % q;
        }
        det = mul(det, m[c][c], q);
        let iv = inv(m[c][c], q);
        for r in c + 1..k {
            if m[r][c] == 0 {
                continue;
            }
            let f = mul(m[r][c], iv, q);
            for j in c..k {
                let t = mul(f, m[c][j], q);
                m[r][j] = (m[r][j] + q - t) % q;
            }
        }
    }
    det
}

/// Solves `a x = b` over `F_q`; `None` when `a` is singular.
fn solve_mod(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, q: u64) -> Option<Vec<u64>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(p, c);
        b.swap(p, c);
        let iv = inv(a[c][c], q);
        for j in c..n {
            a[c][j] = mul(a[c][j], iv, q);
        }
        b[c] = mul(b[c], iv, q);
        for r in 0..n {
            if r == c || a[r][c] == 0 {
                continue;
            }
            let f = a[r][c];
            for j in c..n {
                let t = mul(f, a[c][j], q);
                a[r][j] = (a[r][j] + q - t) % q;
            }
            let t = mul(f, b[c], q);
            b[r] = (b[r] + q - t) % q;
        }
    }
    Some(b)
}

/// Columns scaled to integers (support of `P` is unchanged) and reduced mod `q`.
fn columns_mod(m: &LinearMatroid, q: u64) -> Vec<Vec<u64>> {
    m.columns()
        .iter()
        .map(|v| {
            to_integer_vector(v)
                .0
                .iter()
                .map(|x| reduce(x, q))
                .collect()
        })
        .collect()
}

/// `Q_r` for `r in 0..p`: residues of `P` with exponents reduced mod `p`.
fn residue_poly(
    cols: &[Vec<u64>],
    k: usize,
    res: &[u64],
    p: u64,
    q: u64,
    w: u64,
    exec: Execution,
) -> Vec<u64> {
    // Group the rank-one terms by cost residue.
    let mut groups: Vec<(u64, Vec<Vec<u64>>)> = Vec::new();
    for (v, &r) in cols.iter().zip(res) {
        let g = match groups.iter().position(|(x, _)| *x == r) {
            Some(i) => i,
            None => {
                groups.push((r, vec![vec![0; k]; k]));
                groups.len() - 1
            }
        };
        let gm = &mut groups[g].1;
        for a in 0..k {
            for b in 0..k {
                gm[a][b] = (gm[a][b] + mul(v[a], v[b], q)) % q;
            }
        }
    }
    let evals = map_indexed(exec, p as usize, |j| {
        let mut m = vec![vec![0u64; k]; k];
        for (r, g) in &groups {
            let s = pow(w, (j as u64 * r) % p, q);
            for a in 0..k {
                for b in 0..k {
                    m[a][b] = (m[a][b] + mul(s, g[a][b], q)) % q;
                }
            }
        }
        det_mod(m, q)
    });
    let pinv = inv(p % q, q);
    let winv = inv(w, q);
    (0..p)
        .map(|r| {
            let step = pow(winv, r, q);
            let mut acc = 0u64;
            let mut x = 1u64;
            for e in &evals {
                acc = (acc + mul(*e, x, q)) % q;
                x = mul(x, step, q);
            }
            mul(acc, pinv, q)
        })
        .collect()
}

fn contract_mod(cols: &[Vec<u64>], j: usize, q: u64) -> Option<Vec<Vec<u64>>> {
    let r = cols[j].iter().position(|&x| x != 0)?;
    let iv = inv(cols[j][r], q);
    Some(
        cols.iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, u)| {
                let f = mul(u[r], iv, q);
                (0..u.len())
                    .filter(|&a| a != r)
                    .map(|a| (u[a] + q - mul(f, cols[j][a], q)) % q)
                    .collect()
            })
            .collect(),
    )
}

/// A set of `k` elements whose cost is `rho` mod `p` and whose determinant is
/// nonzero mod `q`, by deletion and contraction on `Q`.
#[allow(clippy::too_many_arguments)]
fn witness_residue(
    cols0: &[Vec<u64>],
    k0: usize,
    res: &[u64],
    rho: u64,
    p: u64,
    q: u64,
    w: u64,
    exec: Execution,
) -> Option<Vec<usize>> {
    let mut cols = cols0.to_vec();
    let mut ids: Vec<usize> = (0..cols.len()).collect();
    let mut k = k0;
    let mut target = rho;
    let mut chosen = Vec::new();
    // Each step decides the first remaining element.
    let pos = 0;
    while pos < ids.len() && k > 0 {
        let del_cols: Vec<Vec<u64>> = cols
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, v)| v.clone())
            .collect();
        let del_res: Vec<u64> = ids
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &e)| res[e])
            .collect();
        let qd = residue_poly(&del_cols, k, &del_res, p, q, w, exec);
        if qd[target as usize] != 0 {
            cols = del_cols;
            ids.remove(pos);
        } else {
            let e = ids[pos];
            cols = contract_mod(&cols, pos, q)?;
            ids.remove(pos);
            chosen.push(e);
            target = (target + p - res[e]) % p;
            k -= 1;
        }
    }
    chosen.sort_unstable();
    Some(chosen)
}

/// Settings for the modular backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModpConfig {
    /// Fresh field primes tried after a failed certification.
    pub retries: usize,
    pub exec: Execution,
}

impl Default for ModpConfig {
    fn default() -> Self {
        Self {
            retries: 8,
            exec: Execution::default(),
        }
    }
}

/// Outcome of a separation call.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatroidSeparation {
    /// A verified basis and its exact cost, which lies outside `Z`.
    Found {
        cost: BigInt,
        basis: Vec<usize>,
    },
    Exhausted,
}

/// Costs in vector form: `P(y) = det(sum_i y^(w_i) v_i v_i^T)` with Laurent
/// monomials, and `Z` as exponent vectors. Scalar costs are the case `s = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorCosts {
    pub cols: Vec<Vec<BigInt>>,
    pub z: Vec<Vec<BigInt>>,
}

/// Degree bound above which the randomized identity test is skipped.
const IDENTITY_DEGREE_LIMIT: u64 = 1 << 40;

/// Randomized test of `support(P) ⊆ Z`: fit `R(y) = sum_j a_j y^(z_j)` to
/// `|Z|` random evaluations of `P` and check two fresh points. `Some(true)`
/// when the fit holds, `Some(false)` when `P` has a monomial outside `Z`,
/// `None` when inconclusive.
fn identity_test<R: Rng + ?Sized>(
    cols_q: &[Vec<u64>],
    k: usize,
    vc: &VectorCosts,
    q: u64,
    rng: &mut R,
) -> Option<bool> {
    let s = vc.z.first().or(vc.cols.first()).map_or(0, Vec::len);
    // Total degree bound after clearing negative exponents.
    let mut deg: u64 = 0;
    for t in 0..s {
        let hi = vc.cols.iter().map(|c| &c[t]).max()?;
        let lo = vc.cols.iter().map(|c| &c[t]).min()?;
        let span = ((hi - lo) * BigInt::from(k)).to_u64()?;
        deg = deg.checked_add(span)?.checked_add(1)?;
    }
    deg = deg.max(1);
    if deg >= IDENTITY_DEGREE_LIMIT {
        return None;
    }
    let l = vc.z.len();
    let sample = |rng: &mut R| -> (u64, Vec<u64>) {
        let y: Vec<u64> = (0..s).map(|_| rng.gen_range(1..q)).collect();
        let mono = |e: &[BigInt]| -> u64 {
            e.iter()
                .zip(&y)
                .fold(1u64, |acc, (ei, &yi)| mul(acc, pow_big(yi, ei, q), q))
        };
        let mut m = vec![vec![0u64; k]; k];
        for (v, w) in cols_q.iter().zip(&vc.cols) {
            let f = mono(w);
            for a in 0..k {
                let fa = mul(f, v[a], q);
                for b in 0..k {
                    m[a][b] = (m[a][b] + mul(fa, v[b], q)) % q;
                }
            }
        }
        (det_mod(m, q), vc.z.iter().map(|z| mono(z)).collect())
    };
    for _ in 0..3 {
        let pts: Vec<(u64, Vec<u64>)> = (0..l).map(|_| sample(rng)).collect();
        let a: Vec<Vec<u64>> = pts.iter().map(|(_, m)| m.clone()).collect();
        let b: Vec<u64> = pts.iter().map(|(v, _)| *v).collect();
        let Some(coef) = solve_mod(a, b, q) else {
            continue;
        };
        for _ in 0..2 {
            let (v, m) = sample(rng);
            let fit = m
                .iter()
                .zip(&coef)
                .fold(0u64, |acc, (x, c)| (acc + mul(*x, *c, q)) % q);
            if fit != v {
                return Some(false);
            }
        }
        return Some(true);
    }
    None
}

fn next_prime(mut p: u64) -> u64 {
    loop {
        p += 1;
        if is_prime_u64(p) {
            return p;
        }
    }
}

/// Number of primes scanned before giving up.
pub fn prime_scan_bound(l: usize, max_cost: &BigInt) -> usize {
    let x = (max_cost + 2u32).to_u64().unwrap_or(u64::MAX);
    let lg = if x == u64::MAX {
        max_cost.bits() as usize + 1
    } else {
        ceil_log2(x) as usize
    };
    4 * l * l * lg + 16
}

/// Separation of basis costs from `z` modulo `x^p - 1`.
///
/// `vector` optionally carries the unencoded costs, which enables the exact
/// exhaustion test when encoded costs are too large for the scalar one.
pub fn matroid_separate_modp<R: Rng + ?Sized>(
    m: &LinearMatroid,
    costs: &[BigInt],
    z: &[BigInt],
    vector: Option<&VectorCosts>,
    cfg: ModpConfig,
    rng: &mut R,
) -> Result<MatroidSeparation> {
    if costs.len() != m.len() {
        return Err(Error::DimensionMismatch {
            expected: m.len(),
            found: costs.len(),
        });
    }
    if let Some(c) = costs.iter().find(|c| c.is_negative()) {
        return Err(Error::OutOfRange {
            value: c.to_string(),
            bound: "nonnegative".into(),
        });
    }
    let k = m.rank();
    let zset: HashSet<&BigInt> = z.iter().collect();
    let dmax = max_basis_cost(costs, k);
    let scalar;
    let vc = match vector {
        Some(v) => v,
        None => {
            scalar = VectorCosts {
                cols: costs.iter().map(|c| vec![c.clone()]).collect(),
                z: z.iter().map(|c| vec![c.clone()]).collect(),
            };
            &scalar
        }
    };
    let q0 = random_field_prime(2, rng);
    let verdict = identity_test(&columns_mod(m, q0), k, vc, q0, rng);
    if verdict == Some(true) {
        return Ok(MatroidSeparation::Exhausted);
    }
    let bound = prime_scan_bound(z.len(), &dmax);
    let mut any_distinct = false;
    let mut failures = 0;
    let mut p = 1u64;
    for _ in 0..bound {
        p = next_prime(p);
        let pz: Vec<u64> = z
            .iter()
            .map(|x| x.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect();
        let zres: BTreeSet<u64> = pz.iter().copied().collect();
        if zres.len() != z.len() || zres.len() as u64 >= p {
            continue;
        }
        any_distinct = true;
        let res: Vec<u64> = costs
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect();
        let exact = dmax < BigInt::from(p);
        'field: loop {
            let q = random_field_prime(p, rng);
            let w = root_of_unity(p, q, rng);
            let cols = columns_mod(m, q);
            let qpoly = residue_poly(&cols, k, &res, p, q, w, cfg.exec);
            let escapes: Vec<u64> = (0..p)
                .filter(|r| qpoly[*r as usize] != 0 && !zres.contains(r))
                .collect();
            if escapes.is_empty() {
                if exact && verdict.is_none() {
                    return Ok(MatroidSeparation::Exhausted);
                }
                break 'field;
            }
            for rho in escapes {
                if let Some(s) = witness_residue(&cols, k, &res, rho, p, q, w, cfg.exec) {
                    let c = cost_of(costs, &s);
                    if m.is_basis(&s) && !zset.contains(&c) {
                        return Ok(MatroidSeparation::Found { cost: c, basis: s });
                    }
                }
                failures += 1;
                if failures > cfg.retries {
                    return Err(Error::ModpFailure(failures));
                }
                continue 'field;
            }
        }
    }
    if !any_distinct || verdict == Some(false) {
        return Err(Error::NoSuitablePrime);
    }
    Ok(MatroidSeparation::Exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64((1u64 << 61) + 1));
    }

    #[test]
    fn field_prime_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_field_prime(7, &mut rng);
        assert!(q >= 1 << 60 && q < 1 << 62 && (q - 1) % 7 == 0);
        let w = root_of_unity(7, q, &mut rng);
        assert_eq!(pow(w, 7, q), 1);
        assert_eq!(pow_big(w, &BigInt::from(-1), q), inv(w, q));
    }

    #[test]
    fn examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cfg = ModpConfig::default();
        let k3 = LinearMatroid::from_rows_i64(&[vec![1, 1, 0], vec![0, -1, 1]]).unwrap();
        let c = b(&[1, 1, 2]);
        let r = matroid_separate_modp(&k3, &c, &b(&[2]), None, cfg, &mut rng).unwrap();
        assert!(matches!(r, MatroidSeparation::Found { ref cost, .. } if *cost == BigInt::from(3)));
        assert_eq!(
            matroid_separate_modp(&k3, &c, &b(&[2, 3]), None, cfg, &mut rng).unwrap(),
            MatroidSeparation::Exhausted
        );
        let single = LinearMatroid::from_rows_i64(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            matroid_separate_modp(&single, &b(&[4, 9]), &[], None, cfg, &mut rng).unwrap(),
            MatroidSeparation::Found {
                cost: BigInt::from(13),
                basis: vec![0, 1]
            }
        );
        let big = b(&[1_000_000_007, 1_000_000_007, 3]);
        let r = matroid_separate_modp(
            &k3,
            &big,
            &[BigInt::from(2_000_000_014u64)],
            None,
            cfg,
            &mut rng,
        )
        .unwrap();
        assert!(
            matches!(r, MatroidSeparation::Found { ref cost, .. } if *cost == BigInt::from(1_000_000_010u64))
        );
    }
}
