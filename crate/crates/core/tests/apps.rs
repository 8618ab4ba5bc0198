// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

use cmpopt::apps::{
    apb_sort, brute_force_ksum, brute_force_subsetsum, ksum_decide, subsetsum_decide, sum_of,
    PairFamily, QueryMode,
};
use cmpopt::numeric::{ceil_log2, rat};
use cmpopt::oracle::{HiddenWeights, KSubsets, Operand, Powerset, QueryKind, SetOracle};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn values(rng: &mut ChaCha8Rng, n: usize, b: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-b..=b)).collect()
}

#[test]
fn ksum_agrees_with_exhaustive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut worst_ratio: f64 = 0.0;
    for round in 0..100 {
        let n = rng.gen_range(3..=10);
        let k = rng.gen_range(2..=3.min(n));
        let b = rng.gen_range(1..=4);
        let v = values(&mut rng, n, b);
        let mode = if round % 2 == 0 {
            QueryMode::Comparison
        } else {
            QueryMode::EqualityOnly
        };
        let mut o =
            SetOracle::new(KSubsets { n, k }, HiddenWeights::integer(&v, b).unwrap()).unwrap();
        let d = ksum_decide(&mut o, mode, round).unwrap();
        assert_eq!(d.answer, brute_force_ksum(&v, k), "values {v:?} k {k}");
        if let Some(w) = &d.witness {
            assert_eq!(w.len(), k);
            assert_eq!(sum_of(&v, w), BigInt::from(0));
        }
        let q = o.counts();
        if mode == QueryMode::Comparison {
            let bound = ceil_log2(2 * k as u64 * b as u64 + 1) as u64 + 1;
            assert!(
                q.constant <= bound,
                "{} constant comparisons > {bound}",
                q.constant
            );
            assert_eq!(q.equality, 0);
        } else {
            assert_eq!(q.compare + q.constant, 0);
            let kb = (k as i64 * b) as f64;
            worst_ratio = worst_ratio.max(q.equality as f64 / (kb * (n as f64 + kb)));
        }
        // Queries only ever involve k-sets and constants.
        for r in o.ledger().transcript() {
            for op in [&r.lhs, &r.rhs] {
                match op {
                    Operand::Set(s) => assert_eq!(s.len(), k),
                    Operand::Constant(_) => assert_ne!(r.kind, QueryKind::Compare),
                    Operand::Difference(..) => panic!("difference operands are not used here"),
                }
            }
        }
    }
    println!("k-SUM equality queries / (kB (n + kB)) <= {worst_ratio:.3}");
}

#[test]
fn subsetsum_agrees_with_exhaustive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut worst: f64 = 0.0;
    for round in 0..100 {
        let n = rng.gen_range(1..=10);
        let b = rng.gen_range(1..=4);
        let v = values(&mut rng, n, b);
        let t = rng.gen_range(-(n as i64) * b..=(n as i64) * b);
        for mode in [QueryMode::Comparison, QueryMode::EqualityOnly] {
            let mut o =
                SetOracle::new(Powerset { n }, HiddenWeights::integer(&v, b).unwrap()).unwrap();
            let d = subsetsum_decide(&mut o, &rat(t), mode).unwrap();
            assert_eq!(d.answer, brute_force_subsetsum(&v, t), "round {round}");
            if let Some(w) = &d.witness {
                assert_eq!(sum_of(&v, w), BigInt::from(t));
            }
            if mode == QueryMode::Comparison {
                let nb = (n as f64) * b as f64;
                let c = o.counts().total() as f64 / (nb * (nb + 1.0).log2()).max(1.0);
                worst = worst.max(c);
            }
        }
    }
    println!("SUBSET-SUM queries / (nB log2(nB + 1)) <= {worst:.3}");
    assert!(worst <= 8.0);
}

#[test]
fn apb_order_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst: f64 = 0.0;
    for round in 0..40 {
        let n = rng.gen_range(1..=8);
        let b = rng.gen_range(1..=4);
        let v = values(&mut rng, 2 * n, b);
        let fam = PairFamily { n };
        let sum = |i: usize, j: usize| v[i] + v[n + j];
        let mut orders = Vec::new();
        for mode in [QueryMode::Comparison, QueryMode::EqualityOnly] {
            let mut o = SetOracle::new(fam, HiddenWeights::integer(&v, b).unwrap()).unwrap();
            let r = apb_sort(&mut o, mode, round).unwrap();
            for i in 0..n {
                for j in 0..n {
                    for i2 in 0..n {
                        for j2 in 0..n {
                            let (c1, c2) = (r.class[i][j], r.class[i2][j2]);
                            assert_eq!(c1 == c2, sum(i, j) == sum(i2, j2));
                            if r.ordered {
                                assert_eq!(c1.cmp(&c2), sum(i, j).cmp(&sum(i2, j2)));
                            }
                        }
                    }
                }
            }
            for t in o.ledger().transcript() {
                assert!(
                    matches!((&t.lhs, &t.rhs), (Operand::Set(a), Operand::Set(c)) if a.len() == 2 && c.len() == 2)
                );
            }
            if mode == QueryMode::Comparison {
                let bb = b as f64;
                worst = worst.max(
                    o.counts().total() as f64 / ((n as f64 + 2.0 * bb) * (2.0 * bb + 1.0).log2()),
                );
            }
            orders.push(r);
        }
        assert_eq!(orders[0].classes, orders[1].classes);
    }
    println!("A+B queries / ((n + 2B) log2(2B + 1)) <= {worst:.3}");
    assert!(worst <= 8.0);
}

#[test]
fn single_element_needs_no_queries() {
    for mode in [QueryMode::Comparison, QueryMode::EqualityOnly] {
        let mut o = SetOracle::new(KSubsets { n: 1, k: 1 }, HiddenWeights::from_i64(&[3])).unwrap();
        let d = ksum_decide(&mut o, mode, 0).unwrap();
        assert!(!d.answer);
        assert_eq!(d.classes, 1);
        assert_eq!(o.counts().compare, 0);
        assert_eq!(
            o.counts().equality,
            if mode == QueryMode::EqualityOnly {
                1
            } else {
                0
            }
        );
    }
}
