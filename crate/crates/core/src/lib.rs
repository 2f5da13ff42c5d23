//! Point interactions on equilateral polygons.
//!
//! The crate computes the ground-state energy of `N` identical point
//! interactions sitting at the vertices of an equilateral polygon in
//! `R^2` or `R^3`, and studies how that energy depends on the shape of the
//! polygon. The regular polygon is a strict local maximizer; the global
//! question reduces to an extremal property of the sums of polygon
//! diagonals, which the [`search`] module explores numerically.
//!
//! Modules:
//!
//! - [`geometry`]: vertex and bending-angle charts, closure, diagonal sums,
//!   random equilateral polygons, retraction and tangent spaces.
//! - [`spectral`]: free Green's functions, the `Γ` matrix and the secular
//!   equation for the ground state.
//! - [`stationarity`]: the Lagrangian of the diagonal problem, its gradient
//!   and Hessian at the regular polygon, the reduced quadratic form and the
//!   mode-by-mode inequality sweep, and randomized local-maximality checks.
//! - [`search`]: multi-start ascent and annealing over the polygon manifold,
//!   the planar `m = 2` bound, and spectral/geometric consistency runs.
//! - [`cli`]: the `isopoly` command-line front end.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod objective;
pub mod search;
pub mod spectral;
pub mod stationarity;
pub mod table;

mod seeds;

pub use error::{Error, Result};
pub use geometry::{AnglePolygon, Dim, DiagonalReport, PointSet, VertexPolygon};
pub use objective::Objective;
pub use spectral::{GammaMatrix, SpectralResult};

/// Crate version, recorded in every report's metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
