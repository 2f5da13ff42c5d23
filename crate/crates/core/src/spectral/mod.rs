//! Point-interaction Hamiltonian `−Δ_{α,Y}` with identical couplings at the
//! points `Y = {y_1, …, y_N}`.
//!
//! `−κ²` is an eigenvalue iff `Γ(κ)` is singular, where
//! `Γ_ij(κ) = (α − ξ(κ)) δ_ij − (1 − δ_ij) G_κ(|y_i − y_j|)`.

pub mod bessel;
mod solver;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::geometry::{Dim, PointSet};
use crate::linalg::{self, Eigenpair};
use crate::{Error, Result};

pub use bessel::EULER_GAMMA;
pub use solver::{
    existence_check, ground_state, ground_state_with, lambda_min_grid, Existence, SolverOptions, KAPPA_MAX,
    KAPPA_MIN, RESIDUAL_TOL,
};

/// Ground-state data of `−Δ_{α,Y}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    #[serde(rename = "kappa1")]
    pub kappa: f64,
    /// `ε_1 = −κ_1²`.
    #[serde(rename = "eps1")]
    pub energy: f64,
    /// Kernel vector of `Γ(κ_1)`, unit norm, positive entry sum.
    #[serde(rename = "eigvec")]
    pub eigenvector: Vec<f64>,
    /// `|λ_min(Γ(κ_1))|`.
    pub residual: f64,
    /// Width of the sign-change bracket around `κ_1` at termination.
    pub bracket_width: f64,
}

/// Free Green's function of `−Δ + κ²` at distance `r`:
/// `K_0(κr)/2π` in the plane, `e^{−κr}/(4πr)` in space.
pub fn green(dim: Dim, kappa: f64, r: f64) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "Green's function needs a positive distance, got {r}"
        )));
    }
    Ok(green_unchecked(dim, kappa, r))
}

pub(crate) fn green_unchecked(dim: Dim, kappa: f64, r: f64) -> f64 {
    match dim {
        Dim::Two => bessel::k0(kappa * r) / (2.0 * PI),
        Dim::Three => (-kappa * r).exp() / (4.0 * PI * r),
    }
}

/// Regularized Green's function at the interaction site:
/// `−(ln(κ/2) + γ)/2π` in the plane, `−κ/4π` in space.
pub fn xi(dim: Dim, kappa: f64) -> f64 {
    match dim {
        Dim::Two => -((0.5 * kappa).ln() + EULER_GAMMA) / (2.0 * PI),
        Dim::Three => -kappa / (4.0 * PI),
    }
}

/// The matrix `Γ(κ)` for a point configuration.
#[derive(Clone, Debug)]
pub struct GammaMatrix {
    pub dim: Dim,
    pub kappa: f64,
    pub alpha: f64,
    pub matrix: DMatrix<f64>,
}

impl GammaMatrix {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// `(φ, Γ φ)` for the uniform vector `φ = N^{−1/2}(1, …, 1)`.
    pub fn uniform_form(&self) -> f64 {
        self.matrix.sum() / self.n() as f64
    }
}

/// Pairwise distances, failing on coincident points.
pub(crate) fn pair_distances(points: &PointSet) -> Result<DMatrix<f64>> {
    let n = points.len();
    let mut dist = DMatrix::zeros(n, n);
    let mut scale: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let r = points.distance(i, j);
            dist[(i, j)] = r;
            dist[(j, i)] = r;
            scale = scale.max(r);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if dist[(i, j)] <= 1e-12 * scale || dist[(i, j)] == 0.0 {
                return Err(Error::DegenerateConfiguration(format!(
                    "points {i} and {j} coincide"
                )));
            }
        }
    }
    Ok(dist)
}

fn assemble(points: &PointSet, dist: &DMatrix<f64>, alpha: f64, kappa: f64) -> GammaMatrix {
    let n = points.len();
    let dim = points.dim();
    let diag = alpha - xi(dim, kappa);
    let mut m = DMatrix::from_diagonal_element(n, n, diag);
    for i in 0..n {
        for j in i + 1..n {
            let g = -green_unchecked(dim, kappa, dist[(i, j)]);
            m[(i, j)] = g;
            m[(j, i)] = g;
        }
    }
    GammaMatrix {
        dim,
        kappa,
        alpha,
        matrix: m,
    }
}

/// Assembles `Γ(κ)`; each pair is evaluated once so the matrix is exactly
/// symmetric.
pub fn build_gamma(points: &PointSet, alpha: f64, kappa: f64) -> Result<GammaMatrix> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    if !alpha.is_finite() {
        return Err(Error::param("coupling must be finite"));
    }
    let dist = pair_distances(points)?;
    Ok(assemble(points, &dist, alpha, kappa))
}

/// Smallest eigenvalue of `Γ` and its eigenvector (unit norm, entry sum ≥ 0).
pub fn min_eig(gamma: &GammaMatrix) -> Result<Eigenpair> {
    linalg::min_eigenpair(&gamma.matrix)
}

/// `Σ_{i<j} G_κ(|y_i − y_j|)` over all unordered pairs.
pub fn green_sum(points: &PointSet, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    let dist = pair_distances(points)?;
    let n = points.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += green_unchecked(points.dim(), kappa, dist[(i, j)]);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_polygon;

    fn pair(dim: Dim, r: f64) -> PointSet {
        let d = dim.get();
        let mut c = vec![0.0; 2 * d];
        c[d] = r;
        PointSet::new(dim, c).unwrap()
    }

    #[test]
    fn green_values() {
        let e = (-1f64).exp();
        assert!((green(Dim::Three, 1.0, 1.0).unwrap() - 0.029_274_915_762_159_58).abs() < 1e-16);
        assert!((green(Dim::Three, 1.0, 1.0).unwrap() - e / (4.0 * PI)).abs() < 1e-17);
        assert!((green(Dim::Two, 1.0, 1.0).unwrap() - 0.067_008_120_508_497_14).abs() < 1e-15);
        assert!((green(Dim::Three, 2.0, 0.5).unwrap() - 0.058_549_831_524_319_16).abs() < 1e-15);
    }

    #[test]
    fn green_domain() {
        assert!(matches!(green(Dim::Two, 1.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(green(Dim::Three, 1.0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(green(Dim::Three, 0.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn xi_values() {
        assert!((xi(Dim::Three, 1.0) + 1.0 / (4.0 * PI)).abs() < 1e-17);
        assert!((xi(Dim::Three, 1.0) + 0.079_577_471_545_947_67).abs() < 1e-16);
        assert!((xi(Dim::Two, 2.0) + 0.091_866_726_299_153_99).abs() < 1e-16);
        assert!(xi(Dim::Two, 2.0 * (-EULER_GAMMA).exp()).abs() < 1e-16);
    }

    #[test]
    fn gamma_structure() {
        let single = PointSet::new(Dim::Three, vec![0.0; 3]).unwrap();
        let g = build_gamma(&single, -0.3, 2.0).unwrap();
        assert!((g.matrix[(0, 0)] - (-0.3 + 2.0 / (4.0 * PI))).abs() < 1e-16);

        let g = build_gamma(&pair(Dim::Three, 1.0), 0.1, 1.5).unwrap();
        assert_eq!(g.matrix[(0, 1)], g.matrix[(1, 0)]);
        assert!((g.matrix[(0, 1)] + (-1.5f64).exp() / (4.0 * PI)).abs() < 1e-17);

        let tri = regular_polygon(3, 1.0, Dim::Two).unwrap();
        let g = build_gamma(tri.points(), 0.0, 0.8).unwrap();
        let off = g.matrix[(0, 1)];
        assert!(off < 0.0);
        assert!((g.matrix[(0, 2)] - off).abs() < 1e-15 && (g.matrix[(1, 2)] - off).abs() < 1e-15);
        for i in 0..3 {
            assert_eq!(g.matrix[(i, i)], 0.0 - xi(Dim::Two, 0.8));
        }
    }

    #[test]
    fn coincident_points_rejected() {
        let p = PointSet::new(Dim::Two, vec![0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            build_gamma(&p, 0.0, 1.0),
            Err(Error::DegenerateConfiguration(_))
        ));
        assert!(green_sum(&p, 1.0).is_err());
    }

    #[test]
    fn two_point_min_eig() {
        let g = build_gamma(&pair(Dim::Three, 1.0), 0.2, 0.7).unwrap();
        let e = min_eig(&g).unwrap();
        let want = 0.2 - xi(Dim::Three, 0.7) - green(Dim::Three, 0.7, 1.0).unwrap();
        assert!((e.value - want).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.vector[0] - s).abs() < 1e-14 && (e.vector[1] - s).abs() < 1e-14);
    }

    #[test]
    fn regular_polygon_uniform_vector() {
        for n in 3..10 {
            let p = regular_polygon(n, 1.0, Dim::Two).unwrap();
            let g = build_gamma(p.points(), 0.0, 1.3).unwrap();
            let e = min_eig(&g).unwrap();
            let u = 1.0 / (n as f64).sqrt();
            assert!(e.vector.iter().all(|c| (c - u).abs() < 1e-10));
            assert!(e.residual <= 1e-12 * g.matrix.norm());
        }
    }

    #[test]
    fn green_sum_pairs() {
        let p = pair(Dim::Two, 0.4);
        assert_eq!(green_sum(&p, 1.0).unwrap(), green(Dim::Two, 1.0, 0.4).unwrap());
        let tri = regular_polygon(3, 1.0, Dim::Three).unwrap();
        assert!((green_sum(tri.points(), 1.0).unwrap() - 0.087_824_747_286_478_74).abs() < 1e-15);
    }
}
