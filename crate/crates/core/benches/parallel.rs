// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Sequential against data-parallel execution of the sieve elimination step.

use cmpopt::geometry::{boolean_conic_dim_bound, sieve_optimize, FamilyPoints, PointSet};
use cmpopt::numeric::ratio;
use cmpopt::oracle::{FeasibleFamily, HiddenWeights, Powerset, SetOracle};
use cmpopt::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    group.sample_size(10);
    for n in [8usize, 10] {
        let sets = Powerset { n }.enumerate().unwrap();
        let pts = PointSet::from_sets(n, &sets);
        let k = boolean_conic_dim_bound(n as u32) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let w = HiddenWeights::new(
            (0..n)
                .map(|_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
                .collect(),
        );
        for (name, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| {
                    let mut o = SetOracle::new(Powerset { n }, w.clone()).unwrap();
                    let mut c = FamilyPoints::new(&mut o, &sets);
                    sieve_optimize(&pts, &mut c, k, 0, exec).unwrap().index
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sieve);
criterion_main!(benches);
