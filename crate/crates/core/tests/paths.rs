// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

use cmpopt::numeric::Rat;
use cmpopt::paths::{shortest_path_walk_comparisons, HiddenDigraph, PathOutcome, WalkOracle};
use cmpopt::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain Bellman-Ford on the hidden lengths over vertices on some s-t walk:
/// the s-t distance, or `None` if a negative cycle is present.
fn reference(g: &HiddenDigraph, s: usize, t: usize) -> Option<Rat> {
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
    let keep: Vec<bool> = (0..n).map(|v| fs[v] && bt[v]).collect();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    d[s] = Some(Rat::from_integer(0.into()));
    for round in 0..=n {
        let mut changed = false;
        for &(u, v) in g.arcs() {
            if !keep[u] || !keep[v] {
                continue;
            }
            if let Some(du) = d[u].clone() {
                let c = du + g.length(u, v).unwrap();
                if d[v].as_ref().is_none_or(|dv| c < *dv) {
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
    unreachable!()
}

fn random_instance(rng: &mut ChaCha8Rng, i: usize) -> HiddenDigraph {
    let n = rng.gen_range(2..=32);
    let p = rng.gen_range(0.05..0.4);
    // A third of the instances allow negative lengths freely.
    let low = if i % 3 == 0 { -10 } else { -1 };
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                let l = Rat::new(rng.gen_range(low..=20).into(), rng.gen_range(1..=4).into());
                arcs.push((u, v, l));
            }
        }
    }
    HiddenDigraph::new(n, &arcs).unwrap()
}

#[test]
fn walk_comparisons_match_bellman_ford() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut paths, mut cycles, mut unreachable) = (0, 0, 0);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    let mut i = 0;
    while done < 100 {
        i += 1;
        let g = random_instance(&mut rng, i);
        let (s, t) = (0, g.n() - 1);
        let mut o = WalkOracle::new(g.clone(), s, t).unwrap();
        let r = match shortest_path_walk_comparisons(&mut o) {
            Err(Error::Unreachable) => {
                unreachable += 1;
                continue;
            }
            other => other.unwrap(),
        };
        done += 1;
        for q in o.ledger().transcript() {
            for side in [&q.lhs, &q.rhs] {
                let cmpopt::oracle::Operand::Set(w) = side else {
                    panic!("walk operand")
                };
                assert!(o.validate(w).is_ok());
            }
        }
        for k in 1..r.tables.len() {
            for v in 0..g.n() {
                if let (Some(a), Some(b)) = (&r.tables[k - 1][v], &r.tables[k][v]) {
                    assert!(g.walk_length(b).unwrap() <= g.walk_length(a).unwrap());
                }
            }
        }
        match (reference(&g, s, t), r.outcome) {
            (Some(d), PathOutcome::Path(p)) => {
                paths += 1;
                assert_eq!(g.walk_length(&p).unwrap(), d);
                let mut seen = p.clone();
                seen.sort_unstable();
                seen.dedup();
                assert_eq!(seen.len(), p.len(), "path repeats a vertex");
            }
            (None, PathOutcome::NegativeCycle(c)) => {
                cycles += 1;
                assert!(g.walk_length(&c.cycle).unwrap() < Rat::from_integer(0.into()));
                assert!(g.walk_length(&c.looped).unwrap() < g.walk_length(&c.walk).unwrap());
            }
            (d, out) => panic!("reference {d:?}, got {out:?}"),
        }
        let n = r.kept.len() as f64;
        worst = worst.max(r.comparisons as f64 / n.powi(3));
    }
    println!("paths {paths}, negative cycles {cycles}, skipped unreachable {unreachable}, comparisons / n^3 worst {worst:.3}");
    assert!(paths >= 20 && cycles >= 20);
    assert!(worst <= 1.0);
}
