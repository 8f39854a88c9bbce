//! Curvature, kappa-nullity distributions and splitting-tensor dynamics for
//! left-invariant metrics on Lie groups.
//!
//! The crate is organized around a single input object, a metric Lie
//! algebra given by structure constants and a Gram matrix, and a handful of
//! closed-form families built on top of it:
//!
//! - [`lie_metric`] — validation, Koszul connection, curvature tensor,
//!   sectional curvature, and growth vectors of frame distributions.
//! - [`nullity`] — the kappa-nullity as the kernel of a stacked operator,
//!   kappa scans with refinement, and the Radon-Hurwitz obstruction.
//! - [`splitting`] — closed-form matrix Riccati flow of the splitting
//!   tensor along nullity geodesics, its singularities, trace limits,
//!   conullity-2 curvature evolution and the scalar blow-up bound.
//! - [`almost_abelian`] — closed-form geometry of `R ⋉_A V`, 0-nullity,
//!   lattice integrality criteria, and the explicit 5-dimensional
//!   finite-volume construction.
//! - [`catalog`] — cyclic (Milnor-frame) triples, the conullity-2 frame
//!   family, Perrone's algebra, and tabulated row checks.
//! - [`cli`] — the `lie-nullity` command-line interface with deterministic
//!   JSON/CSV output.
//!
//! Every type is an immutable value and every operation a pure function,
//! safe for concurrent use. See the `examples/` directory for one runnable
//! walkthrough per capability.

pub mod almost_abelian;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod lie_metric;
pub mod linalg;
pub mod nullity;
pub mod report;
pub mod splitting;

pub use error::{Error, Result};
