use thiserror::Error;

use crate::exact::{LatticeVector, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone contains a line")]
    NotPointed,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("torus factor not supported: cone is not full-dimensional")]
    TorusFactor,
    #[error("ray {0} is not extremal")]
    NonExtremalRay(LatticeVector),
    #[error("ray {0} is listed twice")]
    DuplicateRay(LatticeVector),
    #[error("strict inequalities are not allowed here")]
    StrictRows,
    #[error("polyhedron is not pointed")]
    NotPointedPolyhedron,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("defining system violates the engine's preconditions: {0}")]
    Precondition(String),
    #[error("exponent {0} lies outside the dual cone")]
    OutsideDualCone(LatticeVector),
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("parameter must be positive, got {0}")]
    NonPositive(Rational),
    #[error("K_X+Δ is not ℚ-Cartier")]
    NotQCartier,
    #[error("Δ not effective: (w,v_{index}) > 1")]
    NotEffective { index: usize },
    #[error("operation requires rank 2, got rank {0}")]
    RankNotTwo(usize),
    #[error("{0} is not in the cone σ")]
    NotInSigma(LatticeVector),
    #[error("{0} is not in the interior of the dual cone")]
    NotInCanonicalModule(LatticeVector),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
