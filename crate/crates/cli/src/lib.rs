// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Experiment harness: seeded instance streams, every solver checked against
//! a brute-force or classical reference, query counts set against budgets.

pub mod fixtures;
pub mod suites;

use std::fmt;
use std::path::Path;
use std::time::Instant;

use cmpopt::par::{map_indexed, Execution};
use serde::{Deserialize, Serialize};

pub use fixtures::{heavy_edge_order_holds, table_fixture_heavy_edge, LISTED_HEAVY_EDGE_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    Sieve,
    Gsl,
    Ksum,
    Subsetsum,
    Apb,
    Mincut,
    Reconstruct,
    Sample,
    Sparsify,
    MatroidBasis,
    MatroidIntersect,
    Stpath,
    Fixtures,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Sieve => "sieve",
            Solver::Gsl => "gsl",
            Solver::Ksum => "ksum",
            Solver::Subsetsum => "subsetsum",
            Solver::Apb => "apb",
            Solver::Mincut => "mincut",
            Solver::Reconstruct => "reconstruct",
            Solver::Sample => "sample",
            Solver::Sparsify => "sparsify",
            Solver::MatroidBasis => "matroid-basis",
            Solver::MatroidIntersect => "matroid-intersect",
            Solver::Stpath => "stpath",
            Solver::Fixtures => "fixtures",
        }
    }
}

/// Rejected experiment settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Instance text read from a file instead of a generator.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct InstanceFiles {
    pub graph: Option<String>,
    pub matroid: Option<String>,
    pub matroid2: Option<String>,
    pub weights: Option<String>,
    pub s: usize,
    pub t: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub solver: Solver,
    pub n: usize,
    pub b: i64,
    pub k: usize,
    pub eps: f64,
    pub p: f64,
    pub density: f64,
    pub seed: u64,
    pub reps: usize,
    #[serde(skip)]
    pub exec: Execution,
    #[serde(skip)]
    pub files: InstanceFiles,
}

impl ExperimentConfig {
    pub fn new(solver: Solver) -> Self {
        Self {
            solver,
            n: 8,
            b: 3,
            k: 3,
            eps: 0.1,
            p: 0.5,
            density: 0.3,
            seed: 0,
            reps: 10,
            exec: Execution::default(),
            files: InstanceFiles::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError(m));
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return bad(format!("eps {} outside (0, 1)", self.eps));
        }
        if !(0.0..=1.0).contains(&self.p) || !(0.0..=1.0).contains(&self.density) {
            return bad("probabilities must lie in [0, 1]".into());
        }
        if self.b < 1 {
            return bad(format!("B = {} must be positive", self.b));
        }
        let cap = match self.solver {
            Solver::Sieve => 16,
            Solver::Gsl | Solver::Subsetsum => 12,
            Solver::Ksum | Solver::Apb => 16,
            Solver::MatroidBasis | Solver::MatroidIntersect => 14,
            Solver::Mincut
            | Solver::Reconstruct
            | Solver::Sample
            | Solver::Sparsify
            | Solver::Stpath => 512,
            Solver::Fixtures => usize::MAX,
        };
        if self.n > cap {
            return bad(format!(
                "n = {} exceeds {cap} for {}",
                self.n,
                self.solver.name()
            ));
        }
        if self.n < 1 && self.solver != Solver::Fixtures {
            return bad("n must be positive".into());
        }
        Ok(())
    }

    /// Seed of run `run`.
    pub fn run_seed(&self, run: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(run as u64)
    }
}

/// Outcome of one run, before timing is attached.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub n: usize,
    pub correct: bool,
    pub compare: u64,
    pub equality: u64,
    pub constant: u64,
    pub marginal: u64,
    /// Non-comparison oracle calls (independence tests).
    pub other: u64,
    /// Formula value the query count is measured against.
    pub budget: f64,
    pub note: String,
}

impl Measured {
    pub fn queries(&self) -> u64 {
        self.compare + self.equality + self.constant + self.marginal
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub measured: Measured,
    pub queries: u64,
    pub budget_ratio: f64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub runs: usize,
    pub pass_rate: Option<f64>,
    pub max_queries: u64,
    pub mean_queries: f64,
    pub max_budget_ratio: f64,
    pub budget_formula: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub solver: Solver,
    pub config: ExperimentConfig,
    pub aggregate: Aggregate,
    pub runs: Vec<RunRecord>,
}

impl RunReport {
    /// JSON with wall times zeroed, for byte comparisons across replays.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        for x in &mut r.runs {
            x.wall_ms = 0.0;
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "run",
            "seed",
            "n",
            "correct",
            "compare",
            "equality",
            "constant",
            "marginal",
            "other",
            "queries",
            "budget",
            "budget_ratio",
            "wall_ms",
        ])?;
        for r in &self.runs {
            let m = &r.measured;
            w.write_record([
                r.run.to_string(),
                r.seed.to_string(),
                m.n.to_string(),
                m.correct.to_string(),
                m.compare.to_string(),
                m.equality.to_string(),
                m.constant.to_string(),
                m.marginal.to_string(),
                m.other.to_string(),
                r.queries.to_string(),
                format!("{:.3}", m.budget),
                format!("{:.6}", r.budget_ratio),
                format!("{:.3}", r.wall_ms),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `<dir>/<solver>.json` and `<dir>/<solver>.csv`.
    pub fn write_to(&self, dir: &Path) -> anyhow::Result<()> {
        std::fs::create_dir_all(dir)?;
        let name = self.solver.name();
        std::fs::write(dir.join(format!("{name}.json")), self.to_json())?;
        self.write_csv(std::fs::File::create(dir.join(format!("{name}.csv")))?)?;
        Ok(())
    }
}

/// Runs `reps` seeded instances of the configured solver. Runs fan out over
/// worker threads; records come back sorted by run index.
pub fn run_suite(cfg: &ExperimentConfig) -> anyhow::Result<RunReport> {
    cfg.validate()?;
    let formula = suites::budget_formula(cfg.solver);
    let single = suites::uses_files(cfg);
    let reps = if single || cfg.solver == Solver::Fixtures {
        cfg.reps.min(1)
    } else {
        cfg.reps
    };
    let results = map_indexed(cfg.exec, reps, |run| {
        let seed = cfg.run_seed(run);
        let start = Instant::now();
        let m = suites::run_one(cfg, seed);
        (run, seed, m, start.elapsed().as_secs_f64() * 1e3)
    });
    let mut runs = Vec::with_capacity(reps);
    for (run, seed, m, wall_ms) in results {
        let measured = m?;
        let queries = measured.queries();
        let budget_ratio = if measured.budget > 0.0 {
            queries as f64 / measured.budget
        } else {
            0.0
        };
        runs.push(RunRecord {
            run,
            seed,
            measured,
            queries,
            budget_ratio,
            wall_ms,
        });
    }
    let passed = runs.iter().filter(|r| r.measured.correct).count();
    let aggregate = Aggregate {
        runs: runs.len(),
        pass_rate: (!runs.is_empty()).then(|| passed as f64 / runs.len() as f64),
        max_queries: runs.iter().map(|r| r.queries).max().unwrap_or(0),
        mean_queries: if runs.is_empty() {
            0.0
        } else {
            runs.iter().map(|r| r.queries as f64).sum::<f64>() / runs.len() as f64
        },
        max_budget_ratio: runs.iter().map(|r| r.budget_ratio).fold(0.0, f64::max),
        budget_formula: formula.to_string(),
    };
    Ok(RunReport {
        solver: cfg.solver,
        config: cfg.clone(),
        aggregate,
        runs,
    })
}
