// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! One seeded run per solver: generate or load an instance, solve it through
//! the comparison oracle, check against a reference, report query counts.

use std::collections::BTreeSet;

use anyhow::{bail, Context};
use cmpopt::apps::{
    apb_sort, brute_force_ksum, brute_force_subsetsum, ksum_decide, subsetsum_decide, sum_of,
    PairFamily, QueryMode,
};
use cmpopt::cuts::flow::{stoer_wagner, WeightedGraph};
use cmpopt::cuts::{
    build_sparsifier, min_cut, reconstruct_graph, sample_percolation, vertex_set, CutOracle,
    CutProber, HiddenGraph, MinCutConfig, VertexPartition,
};
use cmpopt::geometry::{boolean_conic_dim_bound, sieve_optimize, FamilyPoints, PointSet};
use cmpopt::gsl::gsl_run;
use cmpopt::matroid::{
    bipartite_matroids, min_weight_basis, min_weight_common_independent, AnyMatroid, Bases,
    CommonIndependent, GraphicMatroid, Matroid,
};
use cmpopt::numeric::{ceil_log2, parse_rational, rat, ratio, Rat};
use cmpopt::oracle::{
    brute_force_argmin, ExplicitFamily, FeasibleFamily, HiddenWeights, KSubsets, Powerset,
    SetOracle,
};
use cmpopt::paths::{shortest_path_walk_comparisons, HiddenDigraph, PathOutcome, WalkOracle};
use cmpopt::separation::PowersetSeparator;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixtures::{indistinguishability_holds, table_fixture_heavy_edge, with_weight};
use crate::{ExperimentConfig, Measured, Solver};

/// Budget formula each solver's query count is divided by.
pub fn budget_formula(s: Solver) -> &'static str {
    match s {
        Solver::Sieve => "k log2 k log2 |P|, k = Boolean conic dimension bound",
        Solver::Gsl => "(2nB + n) ceil(log2(2nB + 1))",
        Solver::Ksum | Solver::Subsetsum => "nB log2(nB + 1)",
        Solver::Apb => "(n + 2B) log2(2B + 1)",
        Solver::Mincut | Solver::Sparsify => "n log2^3 n",
        Solver::Reconstruct | Solver::Sample => "min((m + n) log2 n, n^2)",
        Solver::MatroidBasis => "n log2 n",
        Solver::MatroidIntersect => "n^4",
        Solver::Stpath => "n^3",
        Solver::Fixtures => "none",
    }
}

/// True when the instance comes from files, so there is a single run.
pub fn uses_files(cfg: &ExperimentConfig) -> bool {
    let f = &cfg.files;
    match cfg.solver {
        Solver::Mincut
        | Solver::Reconstruct
        | Solver::Sample
        | Solver::Sparsify
        | Solver::Stpath => f.graph.is_some(),
        Solver::MatroidBasis | Solver::MatroidIntersect => f.matroid.is_some(),
        _ => false,
    }
}

pub fn run_one(cfg: &ExperimentConfig, seed: u64) -> anyhow::Result<Measured> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    match cfg.solver {
        Solver::Sieve => sieve(cfg, rng),
        Solver::Gsl => gsl(cfg, rng),
        Solver::Ksum => ksum(cfg, rng, seed),
        Solver::Subsetsum => subsetsum(cfg, rng),
        Solver::Apb => apb(cfg, rng, seed),
        Solver::Mincut => mincut(cfg, rng, seed),
        Solver::Reconstruct => reconstruct(cfg, rng),
        Solver::Sample => sample(cfg, rng),
        Solver::Sparsify => sparsify(cfg, rng),
        Solver::MatroidBasis => matroid_basis(cfg, rng),
        Solver::MatroidIntersect => matroid_intersect(cfg, rng),
        Solver::Stpath => stpath(cfg, rng),
        Solver::Fixtures => fixtures(),
    }
}

fn log2(x: f64) -> f64 {
    x.max(2.0).log2()
}

fn with_counts(n: usize, correct: bool, c: cmpopt::QueryCounts, budget: f64) -> Measured {
    Measured {
        n,
        correct,
        compare: c.compare,
        equality: c.equality,
        constant: c.constant,
        marginal: c.marginal,
        budget,
        ..Measured::default()
    }
}

fn int_weights(rng: &mut ChaCha8Rng, n: usize, b: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-b..=b)).collect()
}

fn sieve(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let n = cfg.n;
    let size = rng.gen_range(1..=(1usize << n).min(4096));
    let mut masks = BTreeSet::new();
    while masks.len() < size {
        masks.insert(rng.gen_range(0..1u64 << n));
    }
    let sets: Vec<Vec<usize>> = masks
        .into_iter()
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    let fam = ExplicitFamily::new(n, sets.clone())?;
    let w = HiddenWeights::new(
        (0..n)
            .map(|_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
            .collect(),
    );
    let expect = brute_force_argmin(&fam, &w)?;
    let pts = PointSet::from_sets(n, &sets);
    let mut o = SetOracle::new(&fam, w.clone())?;
    let k = boolean_conic_dim_bound(n as u32) as usize;
    let r = {
        let mut c = FamilyPoints::new(&mut o, &sets);
        sieve_optimize(&pts, &mut c, k, rng.gen(), cfg.exec)?
    };
    let correct = w.weight(&sets[r.index]) == w.weight(&expect);
    let kf = k as f64;
    Ok(with_counts(
        n,
        correct,
        o.counts(),
        kf * log2(kf) * log2(sets.len() as f64),
    ))
}

fn gsl(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let (n, b) = (cfg.n, cfg.b);
    let w = int_weights(rng, n, b);
    let hw = HiddenWeights::integer(&w, b)?;
    let fam = Powerset { n };
    let mut o = SetOracle::new(fam, hw.clone())?;
    let st = gsl_run(&mut o, &mut PowersetSeparator::new(n))?;
    let reps: Vec<Rat> = st.representatives().iter().map(|r| hw.weight(r)).collect();
    let mut correct = reps.windows(2).all(|p| p[0] < p[1]);
    for s in fam.enumerate().context("powerset enumerates")? {
        correct &= st.classify(&s).is_some_and(|i| hw.weight(&s) == reps[i]);
    }
    let bound = 2 * n * b as usize + n;
    correct &= st.steps() <= bound;
    let mut m = with_counts(
        n,
        correct,
        o.counts(),
        (bound as u64 * ceil_log2(bound as u64 + 1).max(1) as u64) as f64,
    );
    m.note = format!("separation steps {} of at most {bound}", st.steps());
    Ok(m)
}

fn mode_of(rng: &mut ChaCha8Rng) -> QueryMode {
    if rng.gen_bool(0.5) {
        QueryMode::Comparison
    } else {
        QueryMode::EqualityOnly
    }
}

fn nb_budget(n: usize, b: i64) -> f64 {
    let nb = (n as f64) * b as f64;
    nb * (nb + 1.0).log2()
}

fn ksum(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng, seed: u64) -> anyhow::Result<Measured> {
    let (n, b) = (cfg.n, cfg.b);
    let k = cfg.k.clamp(1, n);
    let v = int_weights(rng, n, b);
    let mode = mode_of(rng);
    let mut o = SetOracle::new(KSubsets { n, k }, HiddenWeights::integer(&v, b)?)?;
    let d = ksum_decide(&mut o, mode, seed)?;
    let witness_ok = d
        .witness
        .as_ref()
        .is_none_or(|w| w.len() == k && sum_of(&v, w) == BigInt::from(0));
    let mut m = with_counts(
        n,
        d.answer == brute_force_ksum(&v, k) && witness_ok,
        o.counts(),
        nb_budget(n, b),
    );
    m.note = format!("{mode:?}");
    Ok(m)
}

fn subsetsum(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let (n, b) = (cfg.n, cfg.b);
    let v = int_weights(rng, n, b);
    let t = rng.gen_range(-(n as i64) * b..=(n as i64) * b);
    let mode = mode_of(rng);
    let mut o = SetOracle::new(Powerset { n }, HiddenWeights::integer(&v, b)?)?;
    let d = subsetsum_decide(&mut o, &rat(t), mode)?;
    let witness_ok = d
        .witness
        .as_ref()
        .is_none_or(|w| sum_of(&v, w) == BigInt::from(t));
    let mut m = with_counts(
        n,
        d.answer == brute_force_subsetsum(&v, t) && witness_ok,
        o.counts(),
        nb_budget(n, b),
    );
    m.note = format!("{mode:?}, target {t}");
    Ok(m)
}

fn apb(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng, seed: u64) -> anyhow::Result<Measured> {
    let (n, b) = (cfg.n, cfg.b);
    let v = int_weights(rng, 2 * n, b);
    let mode = mode_of(rng);
    let mut o = SetOracle::new(PairFamily { n }, HiddenWeights::integer(&v, b)?)?;
    let r = apb_sort(&mut o, mode, seed)?;
    let sum = |i: usize, j: usize| v[i] + v[n + j];
    let mut correct = true;
    for (i, j) in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
        for (i2, j2) in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
            let (c1, c2) = (r.class[i][j], r.class[i2][j2]);
            correct &= (c1 == c2) == (sum(i, j) == sum(i2, j2));
            if r.ordered {
                correct &= c1.cmp(&c2) == sum(i, j).cmp(&sum(i2, j2));
            }
        }
    }
    let bb = b as f64;
    let mut m = with_counts(
        n,
        correct,
        o.counts(),
        (n as f64 + 2.0 * bb) * (2.0 * bb + 1.0).log2(),
    );
    m.note = format!("{mode:?}");
    Ok(m)
}

fn load_graph(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<HiddenGraph> {
    match &cfg.files.graph {
        Some(text) => Ok(HiddenGraph::parse(text)?),
        None => Ok(HiddenGraph::gnp(cfg.n, cfg.density, rng)),
    }
}

fn reference_min_cut(g: &HiddenGraph) -> Option<f64> {
    let mut wg = WeightedGraph::new(g.n());
    for (u, v) in g.edges() {
        let w = g.weight(u, v);
        wg.add(u, v, w.to_f64()?);
    }
    stoer_wagner(&wg).map(|r| r.0)
}

fn mincut(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng, seed: u64) -> anyhow::Result<Measured> {
    let g = load_graph(cfg, rng)?;
    let n = g.n();
    if n < 2 {
        bail!("minimum cut needs at least two vertices");
    }
    let mut pr = CutProber::new(CutOracle::new(g.clone()));
    let r = min_cut(&mut pr, MinCutConfig { eps: cfg.eps, seed })?;
    let found = g
        .cut_weight_of(&r.side)
        .to_f64()
        .context("finite cut value")?;
    let expect = reference_min_cut(&g).context("reference cut")?;
    let nf = n as f64;
    let mut m = with_counts(
        n,
        (found - expect).abs() < 1e-9,
        r.queries,
        nf * log2(nf).powi(3),
    );
    m.note = format!("cut {found}, reference {expect}");
    Ok(m)
}

fn reconstruct(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let g = load_graph(cfg, rng)?;
    let n = g.n();
    let mut pr = CutProber::new(CutOracle::new(g.clone()));
    let (correct, note) = match reconstruct_graph(&mut pr) {
        Ok(e) => (e == g.edges(), format!("{} edges", e.len())),
        Err(e) => (false, e.to_string()),
    };
    let nf = n as f64;
    let budget = ((g.m() as f64 + nf) * log2(nf)).min(nf * nf);
    let mut m = with_counts(n, correct, pr.oracle().counts(), budget);
    m.note = note;
    Ok(m)
}

fn sample(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let g = load_graph(cfg, rng)?;
    let n = g.n();
    let mut pr = CutProber::new(CutOracle::new(g.clone()));
    let edges = sample_percolation(&mut pr, &VertexPartition::singletons(n), cfg.p, None, rng)?;
    let distinct: BTreeSet<_> = edges.iter().collect();
    let correct = distinct.len() == edges.len() && edges.iter().all(|&(u, v)| g.has_edge(u, v));
    let nf = n as f64;
    let budget = ((edges.len() as f64 + nf) * log2(nf)).min(nf * nf);
    let mut m = with_counts(n, correct, pr.oracle().counts(), budget);
    m.note = format!("{} of {} edges kept at p = {}", edges.len(), g.m(), cfg.p);
    Ok(m)
}

fn sparsify(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let g = load_graph(cfg, rng)?;
    let n = g.n();
    if n < 2 {
        bail!("sparsification needs at least two vertices");
    }
    let mut pr = CutProber::new(CutOracle::new(g.clone()));
    let sp = build_sparsifier(&mut pr, cfg.eps, rng)?;
    // Cuts are checked within 1 ± 1.5 eps.
    let tol = 1.5 * cfg.eps;
    let mut worst: f64 = 0.0;
    let mut correct = true;
    for _ in 0..50 {
        let side: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if side.is_empty() || side.len() == n {
            continue;
        }
        let exact = g.cut_size(&vertex_set(n, &side)) as f64;
        let approx = sp.cut_value(&side);
        let err = if exact == 0.0 {
            approx
        } else {
            (approx / exact - 1.0).abs()
        };
        worst = worst.max(err);
        correct &= if exact == 0.0 {
            approx == 0.0
        } else {
            err <= tol
        };
    }
    let nf = n as f64;
    let mut m = with_counts(n, correct, pr.oracle().counts(), nf * log2(nf).powi(3));
    m.note = format!(
        "{} sparsifier edges, worst relative error {worst:.4}",
        sp.edges.len()
    );
    Ok(m)
}

fn weights_for(
    cfg: &ExperimentConfig,
    rng: &mut ChaCha8Rng,
    n: usize,
) -> anyhow::Result<HiddenWeights> {
    match &cfg.files.weights {
        Some(text) => {
            let w: Vec<Rat> = text
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<_, _>>()?;
            if w.len() != n {
                bail!("expected {n} weights, found {}", w.len());
            }
            Ok(HiddenWeights::new(w))
        }
        None => Ok(HiddenWeights::from_i64(&int_weights(rng, n, 20))),
    }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

fn matroid_basis(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let m = match &cfg.files.matroid {
        Some(text) => AnyMatroid::parse(text)?,
        None => {
            let vertices = (cfg.n / 2).max(2);
            let edges = (0..cfg.n)
                .map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
                .collect();
            AnyMatroid::Graphic(GraphicMatroid { vertices, edges })
        }
    };
    let n = m.ground_size();
    if n > 20 {
        bail!("brute-force check limited to 20 elements");
    }
    let w = weights_for(cfg, rng, n)?;
    let mut o = SetOracle::new(Bases::new(m.clone()), w.clone())?;
    let r = min_weight_basis(&m, &mut o)?;
    let rank = m.rank();
    let best = subsets(n)
        .filter(|s| s.len() == rank && m.is_independent(s))
        .map(|s| w.weight(&s))
        .min();
    let correct =
        r.basis.len() == rank && m.is_independent(&r.basis) && best == Some(w.weight(&r.basis));
    let nf = n as f64;
    let mut out = with_counts(n, correct, o.counts(), nf * log2(nf));
    out.other = r.independence_tests;
    out.note = format!("{} components", r.components);
    Ok(out)
}

fn matroid_intersect(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let (m1, m2) = match (&cfg.files.matroid, &cfg.files.matroid2) {
        (Some(a), Some(b)) => (AnyMatroid::parse(a)?, AnyMatroid::parse(b)?),
        (Some(_), None) => bail!("intersection needs a second matroid"),
        _ => {
            let side = (cfg.n / 2).clamp(1, 5);
            let edges: Vec<(usize, usize)> = (0..cfg.n)
                .map(|_| (rng.gen_range(0..side), rng.gen_range(0..side)))
                .collect();
            let (a, b) = bipartite_matroids(side, side, &edges);
            (AnyMatroid::Partition(a), AnyMatroid::Partition(b))
        }
    };
    let n = m1.ground_size();
    if n != m2.ground_size() || n > 20 {
        bail!("matroids must share a ground set of at most 20 elements");
    }
    let w = weights_for(cfg, rng, n)?;
    let fam = CommonIndependent {
        m1: m1.clone(),
        m2: m2.clone(),
    };
    let mut o = SetOracle::new(fam, w.clone())?;
    let r = min_weight_common_independent(&m1, &m2, &mut o)?;
    let common: Vec<Vec<usize>> = subsets(n)
        .filter(|s| m1.is_independent(s) && m2.is_independent(s))
        .collect();
    let best = common.iter().map(|s| w.weight(s)).min();
    let mut correct = best == Some(w.weight(&r.best));
    for (t, y) in r.extremes.iter().enumerate() {
        let lightest = common
            .iter()
            .filter(|s| s.len() == t)
            .map(|s| w.weight(s))
            .min();
        correct &= y.len() == t && lightest == Some(w.weight(y));
    }
    correct &= !common.iter().any(|s| s.len() == r.extremes.len());
    let mut out = with_counts(n, correct, o.counts(), (n as f64).powi(4).max(1.0));
    out.other = r.independence_tests;
    out.note = format!("maximum size {}", r.extremes.len() - 1);
    Ok(out)
}

/// Bellman-Ford on the hidden lengths over vertices on some s-t walk: the
/// s-t distance, or `None` when a negative cycle is present.
fn reference_path(g: &HiddenDigraph, s: usize, t: usize) -> Option<Rat> {
    let n = g.n();
    let reach = |from: usize, fwd: bool| {
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for &(a, b) in g.arcs() {
                let (x, y) = if fwd { (a, b) } else { (b, a) };
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    let (fs, bt) = (reach(s, true), reach(t, false));
    let mut d: Vec<Option<Rat>> = vec![None; n];
    d[s] = Some(rat(0));
    for _ in 0..=n {
        let mut changed = false;
        for &(u, v) in g.arcs() {
            if !(fs[u] && bt[u] && fs[v] && bt[v]) {
                continue;
            }
            if let Some(du) = d[u].clone() {
                let c = du + g.length(u, v).expect("arc");
                if d[v].as_ref().is_none_or(|dv| c < *dv) {
                    d[v] = Some(c);
                    changed = true;
                }
            }
        }
        if !changed {
            return d[t].clone();
        }
    }
    None
}

fn stpath(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> anyhow::Result<Measured> {
    let g = match &cfg.files.graph {
        Some(text) => HiddenDigraph::parse(text)?,
        None => {
            let n = cfg.n.max(2);
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in (0..n).filter(|&v| v != u) {
                    if rng.gen_bool(cfg.density) {
                        arcs.push((u, v, ratio(rng.gen_range(-2..=20), rng.gen_range(1..=4))));
                    }
                }
            }
            HiddenDigraph::new(n, &arcs)?
        }
    };
    let (s, t) = (cfg.files.s, cfg.files.t.unwrap_or(g.n() - 1));
    let mut o = WalkOracle::new(g.clone(), s, t)?.with_ledger(cmpopt::QueryLedger::counting_only());
    let n = g.n();
    let nf = (n as f64).powi(3);
    let r = match shortest_path_walk_comparisons(&mut o) {
        Err(cmpopt::Error::Unreachable) => {
            let mut m = with_counts(n, !reachable(&g, s, t), o.counts(), nf);
            m.note = "t unreachable".into();
            return Ok(m);
        }
        other => other?,
    };
    let (correct, note) = match (reference_path(&g, s, t), &r.outcome) {
        (Some(d), PathOutcome::Path(p)) => {
            (g.walk_length(p).as_ref() == Some(&d), format!("length {d}"))
        }
        (None, PathOutcome::NegativeCycle(c)) => (
            g.walk_length(&c.cycle).is_some_and(|l| l < rat(0)),
            format!("negative cycle {:?}", c.cycle),
        ),
        _ => (false, "disagrees with Bellman-Ford".into()),
    };
    let mut m = with_counts(n, correct, o.counts(), nf);
    m.note = note;
    Ok(m)
}

fn reachable(g: &HiddenDigraph, s: usize, t: usize) -> bool {
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &(a, b) in g.arcs() {
            if a == u && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    seen[t]
}

fn fixtures() -> anyhow::Result<Measured> {
    let heavy = table_fixture_heavy_edge();
    let [u1, u2] = cmpopt::cuts::fixtures::heavy_edge_universes();
    let perturbed = [
        with_weight(&u1, 2, 3, rat(60)),
        with_weight(&u2, 2, 3, rat(60)),
    ];
    let detects = !crate::fixtures::heavy_edge_order_holds(&perturbed);
    let tied = indistinguishability_holds();
    Ok(Measured {
        n: 4,
        correct: heavy && detects && tied,
        note: format!("heavy-edge order {heavy}, perturbation detected {detects}, indistinguishable pairs {tied}"),
        ..Measured::default()
    })
}
