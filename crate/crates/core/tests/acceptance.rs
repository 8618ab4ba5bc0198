// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate: one PASS/FAIL line per criterion. Every expected value is
//! computed here by an independent reference (enumeration, Stoer-Wagner,
//! Bellman-Ford), never taken from the library under test.

use std::collections::BTreeSet;
use std::time::Instant;

use cmpopt::apps::{apb_sort, ksum_decide, subsetsum_decide, PairFamily, QueryMode};
use cmpopt::cuts::fixtures::{
    comparison_table, cut_label, cut_order, heavy_edge_universes, triangle_pair, HEAVY_EDGE_NAMES,
};
use cmpopt::cuts::{
    build_sparsifier, min_cut, reconstruct_graph, sample_percolation, sample_uniform_edges,
    vertex_set, CutOracle, CutProber, HiddenGraph, MinCutConfig, VertexPartition,
};
use cmpopt::geometry::{boolean_conic_dim_bound, sieve_optimize, FamilyPoints, PointSet};
use cmpopt::gsl::gsl_run;
use cmpopt::matroid::{
    bipartite_matroids, min_weight_basis, min_weight_common_independent, Bases, CommonIndependent,
    GraphicMatroid, Matroid,
};
use cmpopt::numeric::{ceil_log2, rat, ratio, Rat};
use cmpopt::oracle::{ExplicitFamily, HiddenWeights, KSubsets, Operand, Powerset, SetOracle};
use cmpopt::paths::{shortest_path_walk_comparisons, HiddenDigraph, PathOutcome, WalkOracle};
use cmpopt::separation::{
    basis_cost_polynomial, cost_of, matroid_separate_modp, matroid_separate_plain, witness_basis,
    LinearMatroid, MatroidSeparation, ModpConfig, PowersetSeparator,
};
use cmpopt::{Error, Execution, Sign};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned tolerances and regression constants.
const HEAVY_EDGE_SECONDS: f64 = 1.0;
const SIEVE_SECONDS: f64 = 120.0;
const SIEVE_C: f64 = 8.0;
const KSUM_EQ_C: f64 = 2.0;
const SUBSETSUM_EQ_C: f64 = 2.0;
const APB_EQ_C: f64 = 8.0;
const MINCUT_SECONDS: f64 = 300.0;
const MINCUT_C: f64 = 1.0;
const RECONSTRUCT_C: f64 = 4.0;
const SAMPLING_SIGMAS: f64 = 4.0;
const SAMPLING_TRIALS: usize = 2000;
const SPARSIFIER_EPS: f64 = 0.1;
const SPARSIFIER_TOL: f64 = 0.15;
const BASIS_C: f64 = 2.0;
const INTERSECTION_C: f64 = 1.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

fn log2(x: f64) -> f64 {
    x.max(2.0).log2()
}

// 1

fn heavy_edge() -> Outcome {
    let start = Instant::now();
    let listed = ["ad", "a", "ab", "b", "ac", "c", "d"];
    let orders: Vec<Vec<String>> = heavy_edge_universes()
        .into_iter()
        .map(|g| {
            let mut o = CutOracle::new(g);
            cut_order(&mut o)
                .unwrap()
                .iter()
                .map(|s| cut_label(s, &HEAVY_EDGE_NAMES))
                .collect()
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let same = orders
        .iter()
        .all(|o| o.iter().map(String::as_str).eq(listed));
    outcome(
        same && secs < HEAVY_EDGE_SECONDS,
        format!(
            "order {} in both universes, {secs:.3} s",
            orders[0].join(" > ")
        ),
    )
}

// 2

fn all_graphs(n: usize) -> impl Iterator<Item = HiddenGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |m| {
        let e: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&i| m >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        HiddenGraph::from_edges(n, &e).unwrap()
    })
}

fn indistinguishability() -> Outcome {
    let [k3, e3] = triangle_pair();
    let t1 = comparison_table(&mut CutOracle::new(k3)).unwrap();
    let t2 = comparison_table(&mut CutOracle::new(e3)).unwrap();
    let ties = t1 == t2 && t1.iter().all(|x| x.2 == Sign::Equal);
    let mut refused = 0;
    let mut wrong = Vec::new();
    let mut total = 0;
    for n in 2..=5 {
        for g in all_graphs(n) {
            total += 1;
            let full = g.m() == n * (n - 1) / 2;
            let special = n <= 3 && (g.m() == 0 || full);
            let r = reconstruct_graph(&mut CutProber::new(CutOracle::new(g.clone())));
            match (special, r) {
                (true, Err(Error::Unidentifiable)) => refused += 1,
                (false, Ok(e)) if e == g.edges() => {}
                (_, r) => wrong.push(format!("n={n} {:?}: {r:?}", g.edges())),
            }
        }
    }
    outcome(
        ties && refused == 4 && wrong.is_empty(),
        format!(
            "K3 vs empty: {} tied comparisons; {refused} refusals; {total} graphs swept, {} wrong",
            t1.len(),
            wrong.len()
        ),
    )
}

// 3

fn sieving() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    let (mut correct, mut worst) = (0, 0.0f64);
    for run in 0..200u64 {
        let (n, sets): (usize, Vec<Vec<usize>>) = if run < 100 {
            let n = rng.gen_range(2..=10);
            let all: Vec<Vec<usize>> = subsets(n).collect();
            let keep = rng.gen_range(0.2..=1.0);
            let mut s: Vec<Vec<usize>> = all.into_iter().filter(|_| rng.gen_bool(keep)).collect();
            if s.is_empty() {
                s.push(Vec::new());
            }
            (n, s)
        } else {
            let n = rng.gen_range(11..=16);
            let size = rng.gen_range(32..=1024);
            let mut masks = BTreeSet::new();
            while masks.len() < size {
                masks.insert(rng.gen_range(0..1u64 << n));
            }
            (
                n,
                masks
                    .into_iter()
                    .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
                    .collect(),
            )
        };
        let w = HiddenWeights::new(
            (0..n)
                .map(|_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
                .collect(),
        );
        let best = sets.iter().map(|s| w.weight(s)).min().unwrap();
        let fam = ExplicitFamily::new(n, sets.clone()).unwrap();
        let pts = PointSet::from_sets(n, &sets);
        let k = boolean_conic_dim_bound(n as u32) as usize;
        let mut o = SetOracle::new(&fam, w.clone()).unwrap();
        let r = {
            let mut c = FamilyPoints::new(&mut o, &sets);
            sieve_optimize(&pts, &mut c, k, run, Execution::Parallel).unwrap()
        };
        if w.weight(&sets[r.index]) == best {
            correct += 1;
        }
        let kf = k as f64;
        let budget = kf * log2(kf) * (sets.len() as f64).log2();
        if r.comparisons > 0 {
            worst = worst.max(r.comparisons as f64 / budget);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        correct == 200 && worst <= SIEVE_C && secs < SIEVE_SECONDS,
        format!("{correct}/200 optimal, comparisons / (k log2 k log2 |P|) <= {worst:.3} (limit {SIEVE_C}), {secs:.1} s"),
    )
}

// 4

fn gsl() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let (mut ok, mut step_ok, mut cmp_ok) = (0, 0, 0);
    let mut max_step_ratio = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let b = rng.gen_range(1..=5);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
        let hw = HiddenWeights::integer(&w, b).unwrap();
        let mut o = SetOracle::new(Powerset { n }, hw.clone()).unwrap();
        let st = gsl_run(&mut o, &mut PowersetSeparator::new(n)).unwrap();
        // Sort every set by its true weight and compare the induced classes.
        let all: Vec<Vec<usize>> = subsets(n).collect();
        let sums: Vec<i64> = all.iter().map(|s| s.iter().map(|&e| w[e]).sum()).collect();
        let distinct: Vec<i64> = sums
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let agree = all
            .iter()
            .zip(&sums)
            .all(|(s, x)| st.classify(s) == distinct.binary_search(x).ok())
            && st.buckets().len() == distinct.len();
        ok += agree as usize;
        let bound = 2 * n * b as usize + n;
        step_ok += (st.steps() <= bound) as usize;
        max_step_ratio = max_step_ratio.max(st.steps() as f64 / bound as f64);
        cmp_ok += (o.counts().compare
            <= st.steps() as u64 * ceil_log2(bound as u64 + 1 - n as u64) as u64)
            as usize;
    }
    outcome(
        ok == 100 && step_ok == 100 && cmp_ok == 100,
        format!("{ok}/100 classifications exact, {step_ok}/100 within 2nB+n steps (max ratio {max_step_ratio:.3}), {cmp_ok}/100 within comparison bound"),
    )
}

// 5

fn random_linear(rng: &mut ChaCha8Rng, k: usize, n: usize) -> LinearMatroid {
    loop {
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if let Ok(m) = LinearMatroid::from_rows_i64(&rows) {
            return m;
        }
    }
}

fn matroid_separation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let (mut support_ok, mut agree, mut witnesses, mut witness_ok) = (0, 0, 0, 0);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=n.min(4));
        let m = random_linear(&mut rng, k, n);
        let c: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(0..=20)))
            .collect();
        let bases: Vec<Vec<usize>> = subsets(n)
            .filter(|s| s.len() == k && !m.det(s).is_zero())
            .collect();
        let costs: BTreeSet<BigInt> = bases
            .iter()
            .map(|s| s.iter().map(|&e| c[e].clone()).sum())
            .collect();
        let p = basis_cost_polynomial(&m, &c, 400).unwrap();
        let support: BTreeSet<BigInt> = p.support().into_iter().map(BigInt::from).collect();
        support_ok += (support == costs) as usize;

        let z: Vec<BigInt> = costs
            .iter()
            .filter(|_| rng.gen_bool(0.6))
            .cloned()
            .collect();
        let plain = matroid_separate_plain(&m, &c, &z, 400).unwrap();
        let modp =
            matroid_separate_modp(&m, &c, &z, None, ModpConfig::default(), &mut rng).unwrap();
        let verify =
            |s: &[usize], t: &BigInt| !m.det(s).is_zero() && s.len() == k && &cost_of(&c, s) == t;
        match (&plain, &modp) {
            (None, MatroidSeparation::Exhausted) => agree += 1,
            (Some(t), MatroidSeparation::Found { cost, basis }) => {
                agree += (!z.contains(t)
                    && costs.contains(t)
                    && !z.contains(cost)
                    && costs.contains(cost)) as usize;
                let s = witness_basis(&m, &c, t, 400).unwrap();
                witnesses += 2;
                witness_ok += verify(basis, cost) as usize + verify(&s, t) as usize;
            }
            _ => {}
        }
    }
    outcome(
        support_ok == 100 && agree == 100 && witness_ok == witnesses,
        format!("support exact {support_ok}/100, backends agree {agree}/100, witnesses verified {witness_ok}/{witnesses}"),
    )
}

// 6

fn applications() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut ok = [0usize; 3];
    let mut eq_ratio = [0.0f64; 3];
    let mut const_ok = 0;
    for round in 0..100u64 {
        let n = rng.gen_range(2..=10);
        let b = rng.gen_range(1..=4);
        let v: Vec<i64> = (0..2 * n).map(|_| rng.gen_range(-b..=b)).collect();
        let hw = |vals: &[i64]| HiddenWeights::integer(vals, b).unwrap();
        let (nf, bf) = (n as f64, b as f64);

        // k-SUM.
        let k = rng.gen_range(2..=3.min(n));
        let vk = &v[..n];
        let truth = subsets(n).any(|s| s.len() == k && s.iter().map(|&e| vk[e]).sum::<i64>() == 0);
        let mut both = true;
        for mode in [QueryMode::Comparison, QueryMode::EqualityOnly] {
            let mut o = SetOracle::new(KSubsets { n, k }, hw(vk)).unwrap();
            let d = ksum_decide(&mut o, mode, round).unwrap();
            both &= d.answer == truth;
            let q = o.counts();
            if mode == QueryMode::Comparison {
                const_ok +=
                    (q.constant as u32 <= ceil_log2(2 * k as u64 * b as u64 + 1) + 1) as usize;
            } else {
                let kb = k as f64 * bf;
                eq_ratio[0] = eq_ratio[0].max((q.equality + q.constant) as f64 / (kb * (nf + kb)));
            }
        }
        ok[0] += both as usize;

        // SUBSET-SUM.
        let t = rng.gen_range(-(n as i64) * b..=(n as i64) * b);
        let truth = subsets(n).any(|s| s.iter().map(|&e| vk[e]).sum::<i64>() == t);
        let mut both = true;
        for mode in [QueryMode::Comparison, QueryMode::EqualityOnly] {
            let mut o = SetOracle::new(Powerset { n }, hw(vk)).unwrap();
            let d = subsetsum_decide(&mut o, &rat(t), mode).unwrap();
            both &= d.answer == truth;
            if mode == QueryMode::EqualityOnly {
                let q = o.counts();
                eq_ratio[1] =
                    eq_ratio[1].max((q.equality + q.constant) as f64 / (nf * nf * bf * bf));
            }
        }
        ok[1] += both as usize;

        // A + B.
        let sum = |i: usize, j: usize| v[i] + v[n + j];
        let mut both = true;
        let mut classes = Vec::new();
        for mode in [QueryMode::Comparison, QueryMode::EqualityOnly] {
            let mut o = SetOracle::new(PairFamily { n }, hw(&v)).unwrap();
            let r = apb_sort(&mut o, mode, round).unwrap();
            for (i, j, i2, j2) in (0..n).flat_map(|i| {
                (0..n).flat_map(move |j| {
                    (0..n).flat_map(move |i2| (0..n).map(move |j2| (i, j, i2, j2)))
                })
            }) {
                let (c1, c2) = (r.class[i][j], r.class[i2][j2]);
                both &= (c1 == c2) == (sum(i, j) == sum(i2, j2));
                if mode == QueryMode::Comparison {
                    both &= r.ordered && c1.cmp(&c2) == sum(i, j).cmp(&sum(i2, j2));
                }
            }
            classes.push(r.classes);
            if mode == QueryMode::EqualityOnly {
                let q = o.counts();
                eq_ratio[2] = eq_ratio[2].max((q.equality + q.constant) as f64 / (bf * (nf + bf)));
            }
        }
        ok[2] += (both && classes[0] == classes[1]) as usize;
    }
    let limits = [KSUM_EQ_C, SUBSETSUM_EQ_C, APB_EQ_C];
    let within = eq_ratio.iter().zip(limits).all(|(r, c)| *r <= c);
    outcome(
        ok == [100, 100, 100] && const_ok == 100 && within,
        format!(
            "k-SUM {}/100, SUBSET-SUM {}/100, A+B {}/100 in both modes; equality counts / closed form: kB(n+kB) {:.3} (limit {KSUM_EQ_C}), n^2B^2 {:.3} (limit {SUBSETSUM_EQ_C}), B(n+B) {:.3} (limit {APB_EQ_C}); constant comparisons in bound {const_ok}/100",
            ok[0], ok[1], ok[2], eq_ratio[0], eq_ratio[1], eq_ratio[2]
        ),
    )
}

// 7

/// Exact Stoer-Wagner on an integer adjacency matrix.
fn stoer_wagner(g: &HiddenGraph) -> i64 {
    let n = g.n();
    let mut w: Vec<Vec<i64>> = (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v) as i64).collect())
        .collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = i64::MAX;
    while alive.len() > 1 {
        let mut used = vec![false; n];
        let mut key = vec![0i64; n];
        let (mut prev, mut last) = (alive[0], alive[0]);
        for _ in 0..alive.len() {
            let u = *alive
                .iter()
                .filter(|&&x| !used[x])
                .max_by_key(|&&x| (key[x], std::cmp::Reverse(x)))
                .unwrap();
            used[u] = true;
            prev = last;
            last = u;
            for &x in &alive {
                if !used[x] {
                    key[x] += w[u][x];
                }
            }
        }
        best = best.min(key[last]);
        for &x in &alive {
            w[prev][x] += w[last][x];
            w[x][prev] = w[prev][x];
        }
        w[prev][prev] = 0;
        alive.retain(|&x| x != last);
    }
    best
}

fn mincut() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let (mut ok, mut worst) = (0, 0.0f64);
    for round in 0..100u64 {
        let n = rng.gen_range(5..=64);
        let p = [0.1, 0.3, 0.6, 0.9][round as usize % 4];
        let g = HiddenGraph::gnp(n, p, &mut rng);
        let mut pr = CutProber::new(CutOracle::new(g.clone()));
        let r = min_cut(
            &mut pr,
            MinCutConfig {
                eps: 0.1,
                seed: round,
            },
        )
        .unwrap();
        ok += (g.cut_size(&vertex_set(n, &r.side)) as i64 == stoer_wagner(&g)) as usize;
        let nf = n as f64;
        worst = worst.max(r.queries.total() as f64 / (nf * nf.log2().powi(3)));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        ok == 100 && worst <= MINCUT_C && secs < MINCUT_SECONDS,
        format!("{ok}/100 equal Stoer-Wagner, queries / (n log2^3 n) <= {worst:.3} (limit {MINCUT_C}), {secs:.1} s"),
    )
}

// 8

fn reconstruction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let (mut ok, mut worst) = (0, 0.0f64);
    for _ in 0..100 {
        let n = rng.gen_range(4..=64);
        let p = rng.gen_range(0.0..=1.0);
        let g = HiddenGraph::gnp(n, p, &mut rng);
        let mut pr = CutProber::new(CutOracle::new(g.clone()));
        let e = reconstruct_graph(&mut pr).unwrap();
        let truth: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| g.has_edge(u, v))
            .collect();
        ok += (e == truth) as usize;
        let nf = n as f64;
        let budget = ((g.m() as f64 + nf) * nf.log2()).min(nf * nf);
        worst = worst.max(pr.oracle().counts().total() as f64 / budget);
    }
    outcome(
        ok == 100 && worst <= RECONSTRUCT_C,
        format!("{ok}/100 exact, queries / min((m+n) log2 n, n^2) <= {worst:.3} (limit {RECONSTRUCT_C})"),
    )
}

// 9

fn sampling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    // Percolation on a fixed 6-vertex graph.
    let g = HiddenGraph::from_edges(
        6,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 0),
            (0, 3),
            (1, 4),
        ],
    )
    .unwrap();
    let part = VertexPartition::singletons(6);
    let p = 0.3;
    let mut hits = vec![0usize; 6 * 6];
    for _ in 0..SAMPLING_TRIALS {
        let mut pr = CutProber::new(CutOracle::new(g.clone()));
        for (u, v) in sample_percolation(&mut pr, &part, p, None, &mut rng).unwrap() {
            hits[u * 6 + v] += 1;
        }
    }
    let sd = (p * (1.0 - p) / SAMPLING_TRIALS as f64).sqrt();
    let perc_dev = g
        .edges()
        .iter()
        .map(|&(u, v)| ((hits[u * 6 + v] as f64 / SAMPLING_TRIALS as f64) - p).abs() / sd)
        .fold(0.0, f64::max);

    // One uniform edge per trial from a fixed 7-vertex graph.
    let h = HiddenGraph::from_edges(
        7,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 0),
            (0, 2),
            (1, 5),
        ],
    )
    .unwrap();
    let m = h.m() as f64;
    let mut hits = vec![0usize; 7 * 7];
    for _ in 0..SAMPLING_TRIALS {
        let mut pr = CutProber::new(CutOracle::new(h.clone()));
        for (u, v) in sample_uniform_edges(&mut pr, 1, &mut rng).unwrap().edges {
            hits[u * 7 + v] += 1;
        }
    }
    let q = 1.0 / m;
    let sd = (q * (1.0 - q) / SAMPLING_TRIALS as f64).sqrt();
    let unif_dev = h
        .edges()
        .iter()
        .map(|&(u, v)| ((hits[u * 7 + v] as f64 / SAMPLING_TRIALS as f64) - q).abs() / sd)
        .fold(0.0, f64::max);

    // Sparsifier of G(64, 0.3).
    let g = HiddenGraph::gnp(64, 0.3, &mut rng);
    let mut pr = CutProber::new(CutOracle::new(g.clone()));
    let sp = build_sparsifier(&mut pr, SPARSIFIER_EPS, &mut rng).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let side: Vec<usize> = loop {
            let s: Vec<usize> = (0..64).filter(|_| rng.gen_bool(0.5)).collect();
            if !s.is_empty() && s.len() < 64 {
                break s;
            }
        };
        let exact = g.cut_size(&vertex_set(64, &side)) as f64;
        worst = worst.max((sp.cut_value(&side) / exact - 1.0).abs());
    }
    outcome(
        perc_dev <= SAMPLING_SIGMAS && unif_dev <= SAMPLING_SIGMAS && worst <= SPARSIFIER_TOL,
        format!(
            "percolation max deviation {perc_dev:.2} sd, uniform edge max deviation {unif_dev:.2} sd (limit {SAMPLING_SIGMAS}) over {SAMPLING_TRIALS} trials; sparsifier worst cut error {worst:.4} (limit {SPARSIFIER_TOL})"
        ),
    )
}

// 10

fn matroids() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let weight = |w: &[i64], s: &[usize]| s.iter().map(|&e| w[e]).sum::<i64>();
    let (mut basis_ok, mut basis_worst) = (0, 0.0f64);
    for i in 0..100 {
        let w: Vec<i64>;
        let (got, best, cmp, n) = if i % 2 == 0 {
            let vertices = rng.gen_range(2..=6);
            let edges = (0..rng.gen_range(1..=12))
                .map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
                .collect();
            let m = GraphicMatroid { vertices, edges };
            let n = m.ground_size();
            w = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
            let mut o = SetOracle::new(Bases::new(m.clone()), HiddenWeights::from_i64(&w)).unwrap();
            let r = min_weight_basis(&m, &mut o).unwrap();
            let rank = subsets(n)
                .filter(|s| m.is_independent(s))
                .map(|s| s.len())
                .max()
                .unwrap();
            let best = subsets(n)
                .filter(|s| s.len() == rank && m.is_independent(s))
                .map(|s| weight(&w, &s))
                .min();
            let valid = r.basis.len() == rank && m.is_independent(&r.basis);
            (valid.then(|| weight(&w, &r.basis)), best, r.comparisons, n)
        } else {
            let n = rng.gen_range(1..=12);
            let k = rng.gen_range(1..=n.min(4));
            let m = random_linear(&mut rng, k, n);
            w = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
            let mut o = SetOracle::new(Bases::new(m.clone()), HiddenWeights::from_i64(&w)).unwrap();
            let r = min_weight_basis(&m, &mut o).unwrap();
            let best = subsets(n)
                .filter(|s| s.len() == k && !m.det(s).is_zero())
                .map(|s| weight(&w, &s))
                .min();
            let valid = r.basis.len() == k && !m.det(&r.basis).is_zero();
            (valid.then(|| weight(&w, &r.basis)), best, r.comparisons, n)
        };
        basis_ok += (got.is_some() && got == best) as usize;
        let nf = n as f64;
        basis_worst = basis_worst.max(cmp as f64 / (nf * log2(nf)));
    }

    let (mut inter_ok, mut extreme_ok, mut inter_worst) = (0, 0, 0.0f64);
    for _ in 0..100 {
        let (left, right) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let edges: Vec<(usize, usize)> = (0..rng.gen_range(1..=10))
            .map(|_| (rng.gen_range(0..left), rng.gen_range(0..right)))
            .collect();
        let n = edges.len();
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
        let (a, b) = bipartite_matroids(left, right, &edges);
        let mut o = SetOracle::new(
            CommonIndependent {
                m1: a.clone(),
                m2: b.clone(),
            },
            HiddenWeights::from_i64(&w),
        )
        .unwrap();
        let r = min_weight_common_independent(&a, &b, &mut o).unwrap();
        // Matchings enumerated directly: no two edges share an endpoint.
        let matchings: Vec<Vec<usize>> = subsets(n)
            .filter(|s| {
                let l: BTreeSet<usize> = s.iter().map(|&e| edges[e].0).collect();
                let rr: BTreeSet<usize> = s.iter().map(|&e| edges[e].1).collect();
                l.len() == s.len() && rr.len() == s.len()
            })
            .collect();
        let best = matchings.iter().map(|s| weight(&w, s)).min().unwrap();
        inter_ok += (weight(&w, &r.best) == best && matchings.contains(&r.best)) as usize;
        let max_size = matchings.iter().map(Vec::len).max().unwrap();
        let extremes = r.extremes.len() == max_size + 1
            && r.extremes.iter().enumerate().all(|(t, y)| {
                let lightest = matchings
                    .iter()
                    .filter(|s| s.len() == t)
                    .map(|s| weight(&w, s))
                    .min();
                y.len() == t && matchings.contains(y) && lightest == Some(weight(&w, y))
            });
        extreme_ok += extremes as usize;
        inter_worst = inter_worst.max(r.comparisons as f64 / (n as f64).powi(4));
    }
    outcome(
        basis_ok == 100 && basis_worst <= BASIS_C && inter_ok == 100 && extreme_ok == 100 && inter_worst <= INTERSECTION_C,
        format!(
            "bases {basis_ok}/100 optimal, comparisons / (n log2 n) <= {basis_worst:.3} (limit {BASIS_C}); intersection {inter_ok}/100 optimal, {extreme_ok}/100 with every Y_t extreme, comparisons / n^4 <= {inter_worst:.3} (limit {INTERSECTION_C})"
        ),
    )
}

// 11

/// Bellman-Ford on vertices lying on some s-t walk: distance, or `None` for
/// a negative cycle.
fn bellman_ford(g: &HiddenDigraph, s: usize, t: usize) -> Option<Rat> {
    let n = g.n();
    let closure = |from: usize, fwd: bool| {
        let mut seen = vec![false; n];
        seen[from] = true;
        for _ in 0..n {
            for &(a, b) in g.arcs() {
                let (x, y) = if fwd { (a, b) } else { (b, a) };
                if seen[x] {
                    seen[y] = true;
                }
            }
        }
        seen
    };
    let (fs, bt) = (closure(s, true), closure(t, false));
    let mut d: Vec<Option<Rat>> = vec![None; n];
    d[s] = Some(rat(0));
    for round in 0..=n {
        let mut changed = false;
        for &(u, v) in g.arcs() {
            if !(fs[u] && bt[u] && fs[v] && bt[v]) {
                continue;
            }
            if let Some(du) = d[u].clone() {
                let c = du + g.length(u, v).unwrap();
                if d[v].as_ref().is_none_or(|x| c < *x) {
                    d[v] = Some(c);
                    changed = true;
                }
            }
        }
        if !changed {
            return d[t].clone();
        }
        if round == n {
            return None;
        }
    }
    None
}

fn paths() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1101);
    let (mut ok, mut cycles, mut certified, mut done) = (0, 0, 0, 0);
    while done < 100 {
        let n = rng.gen_range(2..=32);
        let p = rng.gen_range(0.05..0.4);
        let low = if done % 3 == 0 { -10 } else { -1 };
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in (0..n).filter(|&v| v != u) {
                if rng.gen_bool(p) {
                    arcs.push((
                        u,
                        v,
                        Rat::new(rng.gen_range(low..=20).into(), rng.gen_range(1..=4).into()),
                    ));
                }
            }
        }
        let g = HiddenDigraph::new(n, &arcs).unwrap();
        let mut o = WalkOracle::new(g.clone(), 0, n - 1).unwrap();
        let r = match shortest_path_walk_comparisons(&mut o) {
            Err(Error::Unreachable) => continue,
            other => other.unwrap(),
        };
        done += 1;
        match (bellman_ford(&g, 0, n - 1), &r.outcome) {
            (Some(d), PathOutcome::Path(path)) => ok += (g.walk_length(path) == Some(d)) as usize,
            (None, PathOutcome::NegativeCycle(c)) => {
                cycles += 1;
                let negative = g.walk_length(&c.cycle).is_some_and(|l| l < rat(0));
                ok += negative as usize;
                let last = o.ledger().transcript().last().unwrap();
                let cert = last.lhs == Operand::Set(c.looped.clone())
                    && last.rhs == Operand::Set(c.walk.clone())
                    && last.answer == -1;
                certified += (cert && negative) as usize;
            }
            _ => {}
        }
    }
    outcome(
        ok == 100 && certified == cycles && cycles > 0,
        format!("{ok}/100 match Bellman-Ford, {cycles} negative cycles, {certified} certified by one walk comparison"),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("heavy-edge fixture", heavy_edge),
        ("indistinguishability fixture", indistinguishability),
        ("sieving", sieving),
        ("subspace learning", gsl),
        ("matroid separation", matroid_separation),
        ("applications", applications),
        ("minimum cut", mincut),
        ("reconstruction", reconstruction),
        ("sampling", sampling),
        ("matroid bases and intersection", matroids),
        ("shortest paths", paths),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "criterion {:>2} {name}: {} ({})",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
