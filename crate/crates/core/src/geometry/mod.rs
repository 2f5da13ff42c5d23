//! Equilateral polygons in the plane and in space.
//!
//! A polygon is stored as a flat coordinate vector (`N·d` entries, vertex
//! after vertex), which is also the coordinate space in which gradients,
//! Hessians and tangent vectors live.

mod angles;
mod diagonals;
mod sampling;
mod tangent;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::{Error, Result};

pub use angles::{
    angles_to_vertices, closure_residual, closure_residual_shifted, mean_diagonal_from_angles,
    vertices_to_angles, wrap_angle, AnglePolygon,
};
pub use diagonals::{chord_regular, diagonal_count, diagonal_sum, upsilon, DiagonalReport};
pub use sampling::{
    close_directions, random_equilateral, retract, retract_with_tolerance, ClosureOptions,
    CLOSURE_TOL, MAX_SAMPLER_RESTARTS,
};
pub use tangent::{
    constraint_jacobian, motion_generators, project_onto_tangent, tangent_basis, tangent_space,
    TangentBasis,
};

/// Relative tolerance on edge lengths and closure.
pub const GEOMETRY_TOL: f64 = 1e-10;

/// Ambient dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn get(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// Dimension of the Euclidean motion group acting on a configuration
    /// that spans at least a plane.
    pub fn motion_dim(self) -> usize {
        match self {
            Dim::Two => 3,
            Dim::Three => 6,
        }
    }
}

impl TryFrom<usize> for Dim {
    type Error = Error;

    fn try_from(d: usize) -> Result<Self> {
        match d {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            _ => Err(Error::param(format!("dimension must be 2 or 3, got {d}"))),
        }
    }
}

impl From<Dim> for usize {
    fn from(d: Dim) -> usize {
        d.get()
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.get())
    }
}

/// Finite set of points in `R^d`, no closure or edge constraint.
///
/// This is what the spectral solver consumes; polygons deref to it.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: Dim,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: Dim, coords: Vec<f64>) -> Result<Self> {
        let d = dim.get();
        if coords.is_empty() || !coords.len().is_multiple_of(d) {
            return Err(Error::param(format!(
                "coordinate vector of length {} is not a non-empty multiple of {d}",
                coords.len()
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::param("non-finite coordinate"));
        }
        Ok(PointSet { dim, coords })
    }

    pub fn from_points(dim: Dim, points: &[Vec<f64>]) -> Result<Self> {
        let d = dim.get();
        let mut coords = Vec::with_capacity(points.len() * d);
        for (i, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::param(format!(
                    "point {i} has {} coordinates, expected {d}",
                    p.len()
                )));
            }
            coords.extend_from_slice(p);
        }
        PointSet::new(dim, coords)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim.get()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Vertex `i`, with the index taken modulo the number of points.
    pub fn point(&self, i: usize) -> &[f64] {
        let d = self.dim.get();
        let i = i % self.len();
        &self.coords[i * d..(i + 1) * d]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim.get())
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        linalg::distance(self.point(i), self.point(j))
    }

    pub fn centroid(&self) -> Vec<f64> {
        let d = self.dim.get();
        let n = self.len() as f64;
        let mut c = vec![0.0; d];
        for p in self.points() {
            for (ck, pk) in c.iter_mut().zip(p) {
                *ck += pk;
            }
        }
        c.iter_mut().for_each(|x| *x /= n);
        c
    }

    /// `x ↦ R x + t` applied to every point; `rotation` is row-major `d×d`.
    pub fn transformed(&self, rotation: &[f64], shift: &[f64]) -> Result<PointSet> {
        let d = self.dim.get();
        if rotation.len() != d * d || shift.len() != d {
            return Err(Error::param("rigid motion has wrong shape"));
        }
        let mut coords = Vec::with_capacity(self.coords.len());
        for p in self.points() {
            for r in 0..d {
                coords.push(linalg::dot(&rotation[r * d..(r + 1) * d], p) + shift[r]);
            }
        }
        PointSet::new(self.dim, coords)
    }

    pub fn to_vec_points(&self) -> Vec<Vec<f64>> {
        self.points().map(<[f64]>::to_vec).collect()
    }
}

/// Closed equilateral polygon `y_1, …, y_N` with edge length `ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexPolygon {
    points: PointSet,
    edge: f64,
}

impl VertexPolygon {
    /// Validates `N ≥ 3` and `| |y_{i+1} − y_i| − ℓ | ≤ 1e−10·ℓ` for all `i`.
    pub fn new(points: PointSet, edge: f64) -> Result<Self> {
        Self::with_tolerance(points, edge, GEOMETRY_TOL)
    }

    pub(crate) fn with_tolerance(points: PointSet, edge: f64, tol: f64) -> Result<Self> {
        if !(edge > 0.0 && edge.is_finite()) {
            return Err(Error::param(format!("edge length must be positive, got {edge}")));
        }
        let n = points.len();
        if n < 3 {
            return Err(Error::param(format!("a polygon needs N >= 3 vertices, got {n}")));
        }
        for i in 0..n {
            let len = points.distance(i, i + 1);
            if (len - edge).abs() > tol * edge {
                return Err(Error::param(format!(
                    "edge {i} has length {len}, expected {edge} (not equilateral)"
                )));
            }
        }
        Ok(VertexPolygon { points, edge })
    }

    /// Builds from explicit vertices; the edge length is read off the
    /// first edge when `edge` is `None`.
    pub fn from_vertices(dim: Dim, vertices: &[Vec<f64>], edge: Option<f64>) -> Result<Self> {
        let points = PointSet::from_points(dim, vertices)?;
        if points.len() < 3 {
            return Err(Error::param("a polygon needs N >= 3 vertices"));
        }
        let edge = edge.unwrap_or_else(|| points.distance(0, 1));
        VertexPolygon::new(points, edge)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> Dim {
        self.points.dim()
    }

    pub fn edge(&self) -> f64 {
        self.edge
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        self.points.point(i)
    }

    pub fn coords(&self) -> &[f64] {
        self.points.coords()
    }

    /// Largest relative deviation of an edge length from `ℓ`.
    pub fn max_edge_defect(&self) -> f64 {
        (0..self.n())
            .map(|i| (self.points.distance(i, i + 1) - self.edge).abs() / self.edge)
            .fold(0.0, f64::max)
    }

    /// Rigid image of the polygon.
    pub fn transformed(&self, rotation: &[f64], shift: &[f64]) -> Result<VertexPolygon> {
        VertexPolygon::with_tolerance(
            self.points.transformed(rotation, shift)?,
            self.edge,
            1e3 * GEOMETRY_TOL,
        )
    }

    pub fn to_json(&self) -> PolygonJson {
        PolygonJson::Vertices {
            d: self.dim().get(),
            l: self.edge,
            vertices: self.points.to_vec_points(),
        }
    }
}

impl std::ops::Deref for VertexPolygon {
    type Target = PointSet;

    fn deref(&self) -> &PointSet {
        &self.points
    }
}

/// Regular `N`-gon with edge `ℓ`, centred at the origin in the plane of the
/// first two axes (third coordinate zero when `d = 3`).
pub fn regular_polygon(n: usize, edge: f64, dim: Dim) -> Result<VertexPolygon> {
    if n < 3 {
        return Err(Error::param(format!("regular polygon needs N >= 3, got {n}")));
    }
    if !(edge > 0.0 && edge.is_finite()) {
        return Err(Error::param(format!("edge length must be positive, got {edge}")));
    }
    let radius = circumradius(n, edge);
    let d = dim.get();
    let mut coords = vec![0.0; n * d];
    for j in 0..n {
        let t = 2.0 * PI * j as f64 / n as f64;
        coords[j * d] = radius * t.cos();
        coords[j * d + 1] = radius * t.sin();
    }
    VertexPolygon::new(PointSet::new(dim, coords)?, edge)
}

/// `ℓ / (2 sin(π/N))`.
pub fn circumradius(n: usize, edge: f64) -> f64 {
    edge / (2.0 * (PI / n as f64).sin())
}

/// JSON form of a polygon, in either chart.
///
/// ```json
/// {"d": 2, "l": 1.0, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}
/// {"N": 4, "l": 1.0, "phi": 0.0, "beta": [1.5707963, …], "w": 1}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolygonJson {
    Vertices {
        d: usize,
        l: f64,
        vertices: Vec<Vec<f64>>,
    },
    Angles {
        #[serde(rename = "N")]
        n: usize,
        l: f64,
        phi: f64,
        beta: Vec<f64>,
        w: i64,
    },
}

impl PolygonJson {
    /// Converts to a vertex polygon; angle input is realized in dimension
    /// `dim` (default 2).
    pub fn to_polygon(&self, dim: Option<Dim>) -> Result<VertexPolygon> {
        match self {
            PolygonJson::Vertices { d, l, vertices } => {
                let dim = Dim::try_from(*d)?;
                VertexPolygon::from_vertices(dim, vertices, Some(*l))
            }
            PolygonJson::Angles {
                n,
                l,
                phi,
                beta,
                w,
            } => {
                if beta.len() != *n {
                    return Err(Error::param(format!(
                        "N = {n} but {} bending angles given",
                        beta.len()
                    )));
                }
                let a = AnglePolygon::new(*l, *phi, beta.clone())?;
                if a.winding() != *w {
                    return Err(Error::param(format!(
                        "winding number {w} does not match the angle sum (w = {})",
                        a.winding()
                    )));
                }
                angles_to_vertices(&a, dim.unwrap_or(Dim::Two))
            }
        }
    }
}
