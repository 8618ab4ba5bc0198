// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Packing integer vectors into scalars so that subset sums are preserved.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// `g(v) = b^s + sum_j b^(j-1) v_j` with base `b = 3nM` and `s = len(v)`.
///
/// For subsets of at most `n` vectors with entries in `[-M, M]`, the sum of
/// encodings determines the subset size and the vector sum, because every
/// base-`b` digit of the sum stays within `[-nM, nM]`.
pub fn scalar_encode(v: &[BigInt], n: usize, m: &BigInt) -> Result<BigInt> {
    if let Some(x) = v.iter().find(|x| x.abs() > *m) {
        return Err(Error::OutOfRange {
            value: x.to_string(),
            bound: m.to_string(),
        });
    }
    let base = BigInt::from(3 * n.max(1)) * m;
    let mut pow = BigInt::one();
    let mut acc = BigInt::from(0);
    for x in v {
        acc += &pow * x;
        pow *= &base;
    }
    Ok(acc + pow)
}
