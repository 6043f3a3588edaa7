//! Desk-scale numerical verification of the large-time boundary-observability
//! asymptotic for the Dirichlet Schrödinger equation on n-simplices.
//!
//! The crate is organized as a pipeline:
//!
//! * [`geometry`] — exact floating-point geometry of simplices: volumes, faces,
//!   outward normals, altitudes, and the affine normalization to the standard
//!   simplex (the matrices `A`, `B = A⁻¹`, `Γ = BBᵀ`).
//! * [`mesh`] — conforming uniform (red) refinement with boundary facets tagged
//!   by parent face.
//! * [`fem`] — P1 Lagrange discretization of the Dirichlet Laplacian: assembly,
//!   generalized eigensolve (dense or shift-invert Lanczos), one-sided Neumann
//!   traces, modal projection.
//! * [`dynamics`] — exact-in-time spectral evolution, closed-form observability
//!   integrals, the flux/commutator identity checks, and the large-time
//!   remainder analysis.
//! * [`exact`] — analytic reference solutions and high-precision quadrature
//!   oracles (square-domain counterexample, half-square triangle eigenbasis).
//! * [`report`] — deterministic CSV / JSON / SVG serialization of run reports.
//!
//! All numerical kernels are generic over the scalar type through [`Real`];
//! concrete `f64` aliases for the main domain types live at the crate root.

pub mod dynamics;
pub mod error;
pub mod exact;
pub mod fem;
pub mod geometry;
pub mod linalg;
pub mod mesh;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

/// A simplex with `f64` coordinates.
pub type Simplex64 = geometry::Simplex<f64>;
/// A simplex with `f32` coordinates.
pub type Simplex32 = geometry::Simplex<f32>;
/// A simplicial mesh with `f64` coordinates.
pub type Mesh64 = mesh::SimplicialMesh<f64>;
/// A simplicial mesh with `f32` coordinates.
pub type Mesh32 = mesh::SimplicialMesh<f32>;
/// An assembled P1 system in `f64`.
pub type System64 = fem::AssembledSystem<f64>;
/// A discrete Dirichlet eigenbasis in `f64`.
pub type EigenBasis64 = fem::EigenBasis<f64>;
/// A spectral solution state in `f64`.
pub type SpectralState64 = dynamics::SpectralState<f64>;
/// An observability scan report in `f64`.
pub type ObservabilityReport64 = dynamics::ObservabilityReport<f64>;
