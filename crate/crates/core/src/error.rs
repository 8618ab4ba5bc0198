// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by solvers, oracles and parsers in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("query operand {0:?} is not a feasible set")]
    InfeasibleQuery(Vec<usize>),
    #[error("family cannot be enumerated")]
    NotEnumerable,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("sequence is not sorted by weight (positions {0} and {1})")]
    UnsortedInput(usize, usize),
    #[error("separator returned a point whose weight class is already inferable")]
    SeparatorInconsistent,
    #[error("integer weight {value} outside [-{bound}, {bound}]")]
    WeightOutOfBound { value: String, bound: i64 },
    #[error("encoded vector entry {value} outside [-{bound}, {bound}]")]
    OutOfRange { value: String, bound: String },
    #[error("polynomial degree {degree} exceeds the plain interpolation cap {cap}")]
    DegreeOverflow { degree: String, cap: u64 },
    #[error("modular separation failed after {0} retries")]
    ModpFailure(usize),
    #[error("no suitable prime found within the scan bound")]
    NoSuitablePrime,
    #[error("no basis of cost {0} could be reconstructed")]
    WitnessNotFound(String),
    #[error("cut query with a trivial side (empty set or whole vertex set)")]
    TrivialCut,
    #[error("the endpoint signs of the chain are equal")]
    NoSignChange,
    #[error("operation needs at least {needed} vertices, graph has {found}")]
    TooFewVertices { needed: usize, found: usize },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("graph cannot be identified from cut comparisons")]
    Unidentifiable,
    #[error("graph has {available} edges, {requested} requested")]
    NotEnoughEdges { requested: usize, available: usize },
    #[error("instance exceeds the configured scale caps: {0}")]
    ScaleExceeded(String),
    #[error("oracle answers contradict the matroid axioms: {0}")]
    NotAMatroid(String),
    #[error("elements {0} and {1} lie in different matroid components")]
    DifferentComponents(usize, usize),
    #[error("set is not independent in both matroids")]
    NotCommonIndependent,
    #[error("target vertex is unreachable from the source")]
    Unreachable,
    #[error("operand is not a valid s-t walk: {0}")]
    InvalidWalk(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
