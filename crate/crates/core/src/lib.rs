// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Combinatorial optimization when the only access to the objective is a
//! comparison oracle: given two feasible solutions it reports which one has
//! smaller weight.
//!
//! The crate contains
//!
//! - [`oracle`]: hidden weights, feasible families, query accounting;
//! - [`geometry`]: exact cone geometry and iterative sieving over point sets;
//! - [`gsl`]: subspace learning that sorts all feasible sets of a family with
//!   bounded integer weights;
//! - [`separation`]: separation backends for [`gsl`] (integer kernels, powerset
//!   dynamic programming, determinant polynomials of linear matroids);
//! - [`apps`]: k-SUM, SUBSET-SUM and sorting `A+B`;
//! - [`cuts`]: graphs accessed through cut comparisons (reconstruction,
//!   sampling, sparsification, minimum cut);
//! - [`matroid`]: minimum-weight bases and weighted matroid intersection;
//! - [`paths`]: shortest paths from s-t walk comparisons.

pub mod apps;
pub mod cuts;
pub mod error;
pub mod geometry;
pub mod gsl;
pub mod matroid;
pub mod numeric;
pub mod oracle;
pub mod par;
pub mod paths;
pub mod separation;
pub mod sort;

pub use error::{Error, Result};
pub use numeric::Rat;
pub use oracle::{FeasibleFamily, HiddenWeights, QueryCounts, QueryLedger, SetOracle, Sign};
pub use par::Execution;
