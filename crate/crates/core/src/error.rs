//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by geometry, meshing, assembly, eigensolving, and the
/// analytic oracles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate simplex: |det A| = {det:e} below threshold {threshold:e}")]
    DegenerateSimplex { det: f64, threshold: f64 },

    #[error("ill-conditioned vertex matrix: condition estimate {cond:e} exceeds 1e12")]
    IllConditioned { cond: f64 },

    #[error("unsupported dimension {dim}: {context}")]
    UnsupportedDimension { dim: usize, context: &'static str },

    #[error("invalid face index {face} for an {dim}-simplex")]
    InvalidFace { face: usize, dim: usize },

    #[error("mesh too coarse: no interior vertices (refine at least twice)")]
    MeshTooCoarse,

    #[error("mesh integrity: {0}")]
    MeshIntegrity(String),

    #[error("requested {requested} modes but only {available} interior degrees of freedom")]
    TooManyModes { requested: usize, available: usize },

    #[error("eigensolver did not converge: {unconverged} of {requested} modes above tolerance (worst residual {worst:e})")]
    EigenNonConvergence {
        requested: usize,
        unconverged: usize,
        worst: f64,
    },

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(&'static str),

    #[error("linear solve failed: {0}")]
    LinearSolve(&'static str),

    #[error("invalid mode pair (m, k) = ({m}, {k}): need m > k >= 1")]
    InvalidMode { m: u32, k: u32 },

    #[error("quadrature did not converge below {tol:e} within {panels} panels")]
    QuadratureNonConvergence { tol: f64, panels: usize },

    #[error("asymptotic undefined for zero solution")]
    ZeroState,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape parse: {0}")]
    ShapeParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
