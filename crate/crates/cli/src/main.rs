// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use cmpopt::par::Execution;
use cmpopt_cli::{run_suite, ExperimentConfig, InstanceFiles, Solver};

#[derive(Parser)]
#[command(
    name = "cmpopt",
    about = "Comparison-oracle optimization experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterative sieving on random Boolean families.
    Sieve(Common),
    /// Subspace learning over the powerset with bounded integer weights.
    Gsl(Common),
    /// k-SUM decisions.
    Ksum(Common),
    /// SUBSET-SUM decisions.
    Subsetsum(Common),
    /// Sorting A + B from pair comparisons.
    Apb(Common),
    /// Minimum cut from cut comparisons.
    Mincut(Common),
    /// Graph recovery from cut comparisons.
    Reconstruct(Common),
    /// Percolation sampling of edges.
    Sample(Common),
    /// Cut sparsifier.
    Sparsify(Common),
    /// Minimum-weight matroid basis.
    MatroidBasis(Common),
    /// Minimum-weight common independent set of two matroids.
    MatroidIntersect(Common),
    /// Shortest s-t path from walk comparisons.
    Stpath(Common),
    /// Literal cut fixtures.
    Fixtures(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Weight bound.
    #[arg(long = "B", default_value_t = 3)]
    b: i64,
    /// Subset size for k-SUM.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Sampling probability.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Edge density of generated graphs.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Directory for `<solver>.json` and `<solver>.csv`; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Graph file: `n m` then `u v [w]` lines (`u v len` for stpath).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Matroid file.
    #[arg(long)]
    matroid: Option<PathBuf>,
    /// Second matroid file for intersection.
    #[arg(long)]
    matroid2: Option<PathBuf>,
    /// Whitespace-separated rational weights.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    s: usize,
    /// Defaults to the last vertex.
    #[arg(long)]
    t: Option<usize>,
    /// Run the suite on one thread.
    #[arg(long)]
    sequential: bool,
}

fn read(p: &Option<PathBuf>) -> anyhow::Result<Option<String>> {
    p.as_ref()
        .map(|p| std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())))
        .transpose()
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let (solver, c) = match cli.command {
        Command::Sieve(c) => (Solver::Sieve, c),
        Command::Gsl(c) => (Solver::Gsl, c),
        Command::Ksum(c) => (Solver::Ksum, c),
        Command::Subsetsum(c) => (Solver::Subsetsum, c),
        Command::Apb(c) => (Solver::Apb, c),
        Command::Mincut(c) => (Solver::Mincut, c),
        Command::Reconstruct(c) => (Solver::Reconstruct, c),
        Command::Sample(c) => (Solver::Sample, c),
        Command::Sparsify(c) => (Solver::Sparsify, c),
        Command::MatroidBasis(c) => (Solver::MatroidBasis, c),
        Command::MatroidIntersect(c) => (Solver::MatroidIntersect, c),
        Command::Stpath(c) => (Solver::Stpath, c),
        Command::Fixtures(c) => (Solver::Fixtures, c),
    };
    let cfg = ExperimentConfig {
        solver,
        n: c.n,
        b: c.b,
        k: c.k,
        eps: c.eps,
        p: c.p,
        density: c.density,
        seed: c.seed,
        reps: c.reps,
        exec: if c.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        files: InstanceFiles {
            graph: read(&c.graph)?,
            matroid: read(&c.matroid)?,
            matroid2: read(&c.matroid2)?,
            weights: read(&c.weights)?,
            s: c.s,
            t: c.t,
        },
    };
    let report = run_suite(&cfg)?;
    match &c.out {
        Some(dir) => report.write_to(dir)?,
        None => println!("{}", report.to_json()),
    }
    let a = &report.aggregate;
    eprintln!(
        "{}: {} runs, pass rate {}, max queries {}, max budget ratio {:.4} ({})",
        solver.name(),
        a.runs,
        a.pass_rate.map_or("n/a".to_string(), |r| format!("{r:.3}")),
        a.max_queries,
        a.max_budget_ratio,
        a.budget_formula
    );
    if a.pass_rate.is_some_and(|r| r < 1.0) {
        std::process::exit(1);
    }
    Ok(())
}
