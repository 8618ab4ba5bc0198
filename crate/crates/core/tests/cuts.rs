// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::sync::Arc;

use cmpopt::cuts::{
    build_sparsifier, min_cut, ni_mincut_marginal, reconstruct_graph, sample_percolation,
    sample_uniform_edges, vertex_set, weighted_mincut_fewclasses, CutOracle, CutProber,
    HiddenGraph, MinCutConfig, VertexPartition,
};
use cmpopt::numeric::Rat;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum cut weight by Edmonds–Karp max flow from vertex 0 to every other
/// vertex, on a dense capacity matrix.
fn min_cut_by_flow(g: &HiddenGraph) -> Rat {
    let n = g.n();
    let cap: Vec<Vec<Rat>> = (0..n)
        .map(|u| (0..n).map(|v| g.weight(u, v)).collect())
        .collect();
    let mut best: Option<Rat> = None;
    for t in 1..n {
        let mut res = cap.clone();
        let mut flow = Rat::from_integer(0.into());
        loop {
            let mut prev = vec![usize::MAX; n];
            prev[0] = 0;
            let mut queue = std::collections::VecDeque::from([0]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if prev[v] == usize::MAX && res[u][v] > Rat::from_integer(0.into()) {
                        prev[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                break;
            }
            let mut b = res[prev[t]][t].clone();
            let mut v = t;
            while v != 0 {
                b = b.min(res[prev[v]][v].clone());
                v = prev[v];
            }
            let mut v = t;
            while v != 0 {
                let u = prev[v];
                res[u][v] -= &b;
                res[v][u] += &b;
                v = u;
            }
            flow += b;
        }
        if best.as_ref().map_or(true, |x| &flow < x) {
            best = Some(flow);
        }
    }
    best.expect("n >= 2")
}

fn log2(x: f64) -> f64 {
    x.log2().max(1.0)
}

#[test]
fn reconstruction_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(4..=40);
        let p = [0.05, 0.15, 0.4, 0.8][rng.gen_range(0..4)];
        let g = HiddenGraph::gnp(n, p, &mut rng);
        let mut pr = CutProber::new(CutOracle::new(g.clone()));
        assert_eq!(reconstruct_graph(&mut pr).unwrap(), g.edges());
        let (nf, mf) = (n as f64, g.m() as f64);
        let scale = ((mf + nf) * log2(nf)).min(nf * nf);
        worst = worst.max(pr.oracle().counts().total() as f64 / scale);
    }
    println!("reconstruction queries / min((m + n) log2 n, n^2) <= {worst:.3}");
    assert!(worst <= 8.0);
}

#[test]
fn percolation_keeps_each_edge_with_probability_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let g = Arc::new(
        HiddenGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)])
            .unwrap(),
    );
    let part = VertexPartition::singletons(6);
    let trials = 2000;
    for p in [0.2, 0.5] {
        let mut hits: HashMap<(usize, usize), usize> = HashMap::new();
        for _ in 0..trials {
            let mut pr = CutProber::new(CutOracle::shared(Arc::clone(&g)));
            for e in sample_percolation(&mut pr, &part, p, None, &mut rng).unwrap() {
                assert!(g.has_edge(e.0, e.1));
                *hits.entry(e).or_default() += 1;
            }
        }
        let sd = (trials as f64 * p * (1.0 - p)).sqrt();
        for e in g.edges() {
            let h = *hits.get(&e).unwrap_or(&0) as f64;
            assert!(
                (h - trials as f64 * p).abs() < 4.5 * sd,
                "edge {e:?}: {h} hits at p = {p}"
            );
        }
    }
}

#[test]
fn uniform_edge_samples_pass_chi_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let g = Arc::new(
        HiddenGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap(),
    );
    let trials = 3000;
    let mut freq: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    for _ in 0..trials {
        let mut pr = CutProber::new(CutOracle::shared(Arc::clone(&g)));
        let s = sample_uniform_edges(&mut pr, 2, &mut rng).unwrap();
        *freq.entry(s.edges).or_default() += 1;
    }
    // All C(6, 2) = 15 pairs should be equally likely.
    assert_eq!(freq.len(), 15);
    let expect = trials as f64 / 15.0;
    let chi2: f64 = freq
        .values()
        .map(|&f| (f as f64 - expect).powi(2) / expect)
        .sum();
    // 99.9% quantile of chi-square with 14 degrees of freedom.
    assert!(chi2 < 36.12, "chi-square {chi2}");
}

#[test]
fn min_cut_matches_max_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let mut worst: f64 = 0.0;
    for round in 0..40 {
        let n = rng.gen_range(5..=48);
        let p = rng.gen_range(0.1..0.9);
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
        assert_eq!(
            g.cut_weight(&vertex_set(n, &r.side)),
            min_cut_by_flow(&g),
            "round {round}"
        );
        let nf = n as f64;
        worst = worst.max(r.queries.total() as f64 / (nf * log2(nf).powi(3)));
    }
    println!("min-cut queries / (n log2^3 n) <= {worst:.3}");
}

#[test]
fn sparsifier_strengths_on_disjoint_cliques() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let mut e = Vec::new();
    for base in [0, 5] {
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((base + a, base + b));
            }
        }
    }
    let g = HiddenGraph::from_edges(10, &e).unwrap();
    let mut pr = CutProber::new(CutOracle::new(g.clone()));
    let sp = build_sparsifier(&mut pr, 0.2, &mut rng).unwrap();
    // Every edge of K5 has strength 4.
    let k = 4.0;
    let s0 = sp.strength(0, 1).unwrap();
    for &(u, v) in &e {
        let s = sp.strength(u, v).unwrap();
        assert_eq!(s, s0);
        assert!(k / 4.0 <= s && s <= k, "strength {s}");
    }
    assert!(sp.strength(0, 5).is_none());
}

#[test]
fn sparsifier_preserves_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let eps = 0.15;
    for _ in 0..10 {
        let n = rng.gen_range(4..=12);
        let g = HiddenGraph::gnp(n, 0.5, &mut rng);
        let mut pr = CutProber::new(CutOracle::new(g.clone()));
        let sp = build_sparsifier(&mut pr, eps, &mut rng).unwrap();
        for m in 1..(1u32 << (n - 1)) {
            let side: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            let exact = g.cut_size(&vertex_set(n, &side)) as f64;
            let approx = sp.cut_value(&side);
            assert!(
                (approx - exact).abs() <= eps * exact + 1e-9,
                "cut {side:?}: {approx} vs {exact}"
            );
        }
    }
}

fn random_weighted(rng: &mut ChaCha8Rng, n: usize, b: i64) -> HiddenGraph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v, rng.gen_range(0..=b)));
        }
    }
    HiddenGraph::weighted_i64(n, &e).unwrap()
}

#[test]
fn marginal_min_cut_matches_max_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..30 {
        let n = rng.gen_range(2..=16);
        let b = rng.gen_range(1..=4);
        let g = random_weighted(&mut rng, n, b);
        let mut o = CutOracle::new(g.clone());
        let r = ni_mincut_marginal(&mut o).unwrap();
        assert_eq!(g.cut_weight_of(&r.side), min_cut_by_flow(&g));
    }
}

/// Two groups of `h` vertices, with weights depending only on the label
/// difference within and across groups, so degrees are constant per group.
fn two_class_graph(rng: &mut ChaCha8Rng, h: usize, b: i64) -> HiddenGraph {
    let within: [Vec<i64>; 2] = [
        (0..h).map(|_| rng.gen_range(0..=b)).collect(),
        (0..h).map(|_| rng.gen_range(0..=b)).collect(),
    ];
    let across: Vec<i64> = (0..h).map(|_| rng.gen_range(0..=b)).collect();
    let mut e = Vec::new();
    for g in 0..2 {
        for i in 0..h {
            for j in i + 1..h {
                let d = (j - i).min(h - (j - i));
                e.push((g * h + i, g * h + j, within[g][d]));
            }
        }
    }
    for i in 0..h {
        for j in 0..h {
            e.push((i, h + j, across[(j + h - i) % h]));
        }
    }
    HiddenGraph::weighted_i64(2 * h, &e).unwrap()
}

#[test]
fn few_classes_min_cut_matches_max_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    for _ in 0..20 {
        let h = rng.gen_range(2..=6);
        let b = rng.gen_range(1..=4);
        let g = two_class_graph(&mut rng, h, b);
        let mut o = CutOracle::new(g.clone());
        let r = weighted_mincut_fewclasses(&mut o, b, 2).unwrap();
        assert!(r.classes <= 2);
        assert_eq!(g.cut_weight_of(&r.side), min_cut_by_flow(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn neighbor_queries_agree_with_adjacency(seed in any::<u64>(), n in 4usize..14, p in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = HiddenGraph::gnp(n, p, &mut rng);
        let mut pr = CutProber::new(CutOracle::new(g.clone()));
        for u in 0..n {
            let mut t: Vec<usize> = (0..n).filter(|&v| v != u && rng.gen_bool(0.6)).collect();
            t.sort_by_key(|_| rng.gen::<u32>());
            let nb: Vec<usize> = t.iter().copied().filter(|&v| g.has_edge(u, v)).collect();
            let mut found = pr.neighbors_in_set(u, &t).unwrap();
            found.sort_unstable();
            let mut want = nb.clone();
            want.sort_unstable();
            prop_assert_eq!(&found, &want);
            prop_assert_eq!(pr.first_neighbor(u, &t).unwrap(), nb.first().copied());
            let k = rng.gen_range(0..=nb.len());
            let mut ex = pr.extract_edges(u, &t, k).unwrap();
            prop_assert_eq!(ex.len(), k);
            ex.sort_unstable();
            prop_assert!(ex.iter().all(|v| want.contains(v)));
        }
    }

    #[test]
    fn cut_answers_are_antisymmetric(seed in any::<u64>(), n in 3usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = HiddenGraph::gnp(n, 0.5, &mut rng);
        let mut o = CutOracle::new(g);
        let a: Vec<usize> = (0..n - 1).filter(|_| rng.gen_bool(0.5)).chain([n - 1]).collect();
        let b = vec![0];
        let x = o.compare_cuts(&vertex_set(n, &a), &vertex_set(n, &b));
        let y = o.compare_cuts(&vertex_set(n, &b), &vertex_set(n, &a));
        if a.len() < n {
            prop_assert_eq!(x.unwrap().reverse(), y.unwrap());
        }
    }
}
