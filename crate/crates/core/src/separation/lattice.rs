// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Integer kernels by unimodular column reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Rectangular matrix of big integers, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn new(cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert!(
            data.iter().all(|r| r.len() == cols),
            "rows must have {cols} entries"
        );
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(cols: usize, data: &[Vec<i64>]) -> Self {
        Self::new(
            cols,
            data.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.data
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Basis of the integer kernel `{x in Z^n : A x = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub n: usize,
    /// Basis vectors, each of length `n`.
    pub vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Column `i` of the matrix whose rows are the basis vectors.
    pub fn column(&self, i: usize) -> Vec<BigInt> {
        self.vectors.iter().map(|v| v[i].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.column(i)).collect()
    }

    /// `W x` for a 0/1 indicator given as a set.
    pub fn image(&self, set: &[usize]) -> Vec<BigInt> {
        self.vectors
            .iter()
            .map(|v| set.iter().map(|&i| &v[i]).sum())
            .collect()
    }

    /// Largest absolute entry, at least one.
    pub fn max_abs(&self) -> BigInt {
        self.vectors
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
            .max(BigInt::one())
    }
}

fn col_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

fn col_swap(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Integer kernel of `a`, computed by reducing `a` to column echelon form
/// with unimodular column operations that are mirrored on an identity
/// matrix `U`. With `A U = [H | 0]`, the columns of `U` matching the zero
/// block span the kernel over `Z`.
pub fn integer_nullspace(a: &IntegerMatrix) -> LatticeBasis {
    let n = a.cols;
    let mut h: Vec<Vec<BigInt>> = a.data.clone();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut c = 0;
    for r in 0..a.rows {
        if c == n {
            break;
        }
        loop {
            // Column with the smallest nonzero entry in row r, from c on.
            let piv = (c..n)
                .filter(|&j| !h[r][j].is_zero())
                .min_by(|&x, &y| h[r][x].abs().cmp(&h[r][y].abs()));
            let Some(p) = piv else { break };
            if p != c {
                col_swap(&mut h, p, c);
                col_swap(&mut u, p, c);
            }
            let mut done = true;
            for j in c + 1..n {
                if h[r][j].is_zero() {
                    continue;
                }
                let q = h[r][j].div_floor(&h[r][c]);
                col_axpy(&mut h, j, c, &q);
                col_axpy(&mut u, j, c, &q);
                if !h[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                c += 1;
                break;
            }
        }
    }
    let vectors = (c..n)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect();
    LatticeBasis { n, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn single_row() {
        let k = integer_nullspace(&IntegerMatrix::from_i64(2, &[vec![1, -1]]));
        assert_eq!(k.rank(), 1);
        let v = &k.vectors[0];
        assert!(*v == ints(&[1, 1]) || *v == ints(&[-1, -1]));
    }

    #[test]
    fn no_rows_gives_identity() {
        let k = integer_nullspace(&IntegerMatrix::from_i64(3, &[]));
        assert_eq!(
            k.vectors,
            vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]
        );
    }

    #[test]
    fn chain() {
        let a = IntegerMatrix::from_i64(3, &[vec![1, -1, 0], vec![0, 1, -1]]);
        let k = integer_nullspace(&a);
        assert_eq!(k.rank(), 1);
        let v = &k.vectors[0];
        assert!(*v == ints(&[1, 1, 1]) || *v == ints(&[-1, -1, -1]));
    }

    #[test]
    fn saturated_for_non_unit_pivots() {
        // Kernel of (2, 3) over Z is generated by (3, -2) up to sign.
        let k = integer_nullspace(&IntegerMatrix::from_i64(2, &[vec![2, 3]]));
        let v = &k.vectors[0];
        assert!(*v == ints(&[3, -2]) || *v == ints(&[-3, 2]));
    }
}
