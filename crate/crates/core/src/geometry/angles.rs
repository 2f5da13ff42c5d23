//! Bending-angle chart for planar polygons.
//!
//! Edge `k` (from `y_k` to `y_{k+1}`) points in direction
//! `θ_k = −φ + β_2 + … + β_k`, so `β_k` is the turning angle at vertex `y_k`
//! and `β_1 ≡ θ_1 − θ_N`. Vertex `y_1` sits at the origin.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix3, SymmetricEigen, Vector3};

use super::{Dim, PointSet, VertexPolygon, GEOMETRY_TOL};
use crate::{Error, Result};

/// Reduces an angle to `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Planar polygon in bending-angle coordinates `(φ, β_1..β_N, ℓ)` with
/// winding number `w`, `Σ β_i = 2πw`.
///
/// Closure is not part of the type: [`closure_residual`] measures it and
/// [`angles_to_vertices`] enforces it.
#[derive(Clone, Debug, PartialEq)]
pub struct AnglePolygon {
    edge: f64,
    phi: f64,
    beta: Vec<f64>,
    winding: i64,
}

impl AnglePolygon {
    /// Reduces every `β_i` to `(−π, π]` and derives `w`; fails unless the
    /// reduced angle sum is within `1e−10` of a multiple of `2π`.
    pub fn new(edge: f64, phi: f64, beta: Vec<f64>) -> Result<Self> {
        if !(edge > 0.0 && edge.is_finite()) {
            return Err(Error::param(format!("edge length must be positive, got {edge}")));
        }
        if beta.len() < 3 {
            return Err(Error::param("a polygon needs N >= 3 bending angles"));
        }
        if !phi.is_finite() || beta.iter().any(|b| !b.is_finite()) {
            return Err(Error::param("non-finite angle"));
        }
        let beta: Vec<f64> = beta.into_iter().map(wrap_angle).collect();
        let sum: f64 = beta.iter().sum();
        let winding = (sum / TAU).round();
        if (sum - TAU * winding).abs() > GEOMETRY_TOL {
            return Err(Error::param(format!(
                "bending angles sum to {sum}, not a multiple of 2π"
            )));
        }
        Ok(AnglePolygon {
            edge,
            phi,
            beta,
            winding: winding as i64,
        })
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn edge(&self) -> f64 {
        self.edge
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn closure_residual(&self) -> (f64, f64) {
        closure_residual(&self.beta)
    }

    pub fn to_json(&self) -> super::PolygonJson {
        super::PolygonJson::Angles {
            n: self.n(),
            l: self.edge,
            phi: self.phi,
            beta: self.beta.clone(),
            w: self.winding,
        }
    }
}

/// Closure sums `(1 + Σ_{n=1}^{N−1} cos Σ_{j=1}^n β_j, Σ_{n=1}^{N−1} sin Σ_{j=1}^n β_j)`.
///
/// Both vanish exactly for a closed polygon; their norm is `|y_{N+1} − y_1|/ℓ`.
pub fn closure_residual(beta: &[f64]) -> (f64, f64) {
    closure_residual_shifted(beta, 0)
}

/// Closure sums with the angle sequence started at `β_{1+shift}`.
pub fn closure_residual_shifted(beta: &[f64], shift: usize) -> (f64, f64) {
    let n = beta.len();
    let (mut rc, mut rs) = (1.0, 0.0);
    let mut theta = 0.0;
    for k in 1..n {
        theta += beta[(k - 1 + shift) % n];
        rc += theta.cos();
        rs += theta.sin();
    }
    (rc, rs)
}

/// Realizes an angle polygon in the plane of the first two axes.
pub fn angles_to_vertices(a: &AnglePolygon, dim: Dim) -> Result<VertexPolygon> {
    let n = a.n();
    let d = dim.get();
    let mut coords = vec![0.0; n * d];
    let (mut x, mut y) = (0.0, 0.0);
    let mut theta = -a.phi;
    for k in 0..n {
        if k > 0 {
            theta += a.beta[k];
        }
        if k + 1 < n {
            x += a.edge * theta.cos();
            y += a.edge * theta.sin();
            coords[(k + 1) * d] = x;
            coords[(k + 1) * d + 1] = y;
        } else {
            x += a.edge * theta.cos();
            y += a.edge * theta.sin();
        }
    }
    let residual = x.hypot(y) / a.edge;
    if residual > GEOMETRY_TOL {
        return Err(Error::NotClosed { residual });
    }
    VertexPolygon::new(PointSet::new(dim, coords)?, a.edge)
}

/// Inverse chart: bending angles of a planar polygon.
///
/// In `d = 3` the polygon must lie in a plane (within `1e−10·ℓ`); the
/// in-plane frame is fixed by the principal axes of the vertex cloud.
pub fn vertices_to_angles(p: &VertexPolygon) -> Result<AnglePolygon> {
    let n = p.n();
    let edges: Vec<(f64, f64)> = match p.dim() {
        Dim::Two => (0..n)
            .map(|k| {
                let (a, b) = (p.vertex(k), p.vertex(k + 1));
                (b[0] - a[0], b[1] - a[1])
            })
            .collect(),
        Dim::Three => {
            let (u, v) = plane_frame(p)?;
            (0..n)
                .map(|k| {
                    let (a, b) = (p.vertex(k), p.vertex(k + 1));
                    let e = Vector3::new(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
                    (e.dot(&u), e.dot(&v))
                })
                .collect()
        }
    };
    let theta: Vec<f64> = edges.iter().map(|(x, y)| y.atan2(*x)).collect();
    let mut beta = Vec::with_capacity(n);
    beta.push(wrap_angle(theta[0] - theta[n - 1]));
    for k in 1..n {
        beta.push(wrap_angle(theta[k] - theta[k - 1]));
    }
    AnglePolygon::new(p.edge(), -theta[0], beta)
}

/// Orthonormal in-plane frame `(u, v)` of a planar polygon in `R^3`.
fn plane_frame(p: &VertexPolygon) -> Result<(Vector3<f64>, Vector3<f64>)> {
    let c = p.centroid();
    let c = Vector3::new(c[0], c[1], c[2]);
    let mut cov = Matrix3::zeros();
    for q in p.points().points() {
        let r = Vector3::new(q[0], q[1], q[2]) - c;
        cov += r * r.transpose();
    }
    let eig = SymmetricEigen::new(cov);
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut normal: Vector3<f64> = eig.eigenvectors.column(idx[0]).into_owned();
    let imax = normal.iamax();
    if normal[imax] < 0.0 {
        normal = -normal;
    }
    let off_plane = p
        .points()
        .points()
        .map(|q| ((Vector3::new(q[0], q[1], q[2]) - c).dot(&normal)).abs())
        .fold(0.0, f64::max);
    if off_plane > GEOMETRY_TOL * p.edge() {
        return Err(Error::ChartDomain(format!(
            "polygon is not planar (out-of-plane distance {off_plane:.3e})"
        )));
    }
    let u: Vector3<f64> = eig.eigenvectors.column(idx[2]).into_owned();
    let v = normal.cross(&u);
    Ok((u, v))
}

/// Mean `m`-diagonal length from the angle chart,
/// `M_m = (ℓ/N) Σ_i [m + 2 Σ_{n=1}^{m−1} Σ_{r=1}^{n} cos Σ_{j=r}^{n} β_{j+i}]^{1/2}`.
pub fn mean_diagonal_from_angles(a: &AnglePolygon, m: usize) -> Result<f64> {
    let n = a.n();
    if m < 1 || m > n / 2 {
        return Err(Error::param(format!("m = {m} outside 1..={}", n / 2)));
    }
    let beta = |k: usize| a.beta[(k - 1) % n];
    let mut total = 0.0;
    for i in 1..=n {
        let mut s = m as f64;
        for nn in 1..m {
            for r in 1..=nn {
                let angle: f64 = (r..=nn).map(|j| beta(j + i)).sum();
                s += 2.0 * angle.cos();
            }
        }
        total += s.max(0.0).sqrt();
    }
    Ok(a.edge * total / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{random_equilateral, regular_polygon};

    #[test]
    fn wrap() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(0.1 + 4.0 * TAU) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn unit_square_from_angles() {
        let a = AnglePolygon::new(1.0, PI / 4.0, vec![PI / 2.0; 4]).unwrap();
        assert_eq!(a.winding(), 1);
        let p = angles_to_vertices(&a, Dim::Two).unwrap();
        let sq = regular_polygon(4, 1.0, Dim::Two).unwrap();
        // Same shape: all pairwise distances agree.
        for i in 0..4 {
            for j in 0..4 {
                assert!((p.distance(i, j) - sq.distance(i, j)).abs() < 1e-14);
            }
        }
        assert_eq!(p.vertex(0), &[0.0, 0.0]);
    }

    #[test]
    fn triangle_closes() {
        let a = AnglePolygon::new(1.0, PI / 3.0, vec![2.0 * PI / 3.0; 3]).unwrap();
        let (rc, rs) = a.closure_residual();
        assert!(rc.hypot(rs) < 1e-12);
        let p = angles_to_vertices(&a, Dim::Two).unwrap();
        assert!(p.distance(0, 2) - 1.0 < 1e-14);
    }

    #[test]
    fn regular_and_reflected_angles() {
        for n in 3..12 {
            let p = regular_polygon(n, 1.3, Dim::Two).unwrap();
            let a = vertices_to_angles(&p).unwrap();
            assert_eq!(a.winding(), 1);
            for b in a.beta() {
                assert!((b - TAU / n as f64).abs() < 1e-12);
            }
            let reflected = p.transformed(&[1.0, 0.0, 0.0, -1.0], &[0.0, 0.0]).unwrap();
            let a = vertices_to_angles(&reflected).unwrap();
            assert_eq!(a.winding(), -1);
            for b in a.beta() {
                assert!((b + TAU / n as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn regular_in_space() {
        let p = regular_polygon(7, 1.0, Dim::Three).unwrap();
        let a = vertices_to_angles(&p).unwrap();
        assert_eq!(a.winding().abs(), 1);
        for b in a.beta() {
            assert!((b.abs() - TAU / 7.0).abs() < 1e-12);
        }
    }

    #[test]
    fn non_planar_rejected() {
        let p = random_equilateral(8, Dim::Three, 1.0, 1).unwrap();
        assert!(matches!(vertices_to_angles(&p), Err(Error::ChartDomain(_))));
    }

    #[test]
    fn perturbed_square_does_not_close() {
        let mut beta = vec![PI / 2.0, PI / 2.0, PI / 2.0, PI / 2.0 + 0.1];
        let excess = 0.1 / 4.0;
        beta.iter_mut().for_each(|b| *b -= excess);
        let a = AnglePolygon::new(1.0, 0.0, beta).unwrap();
        let (rc, rs) = a.closure_residual();
        assert!(rc.hypot(rs) > 1e-3);
        assert!(matches!(
            angles_to_vertices(&a, Dim::Two),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn angle_sum_enforced() {
        assert!(AnglePolygon::new(1.0, 0.0, vec![1.0, 1.0, 1.0]).is_err());
        assert!(AnglePolygon::new(0.0, 0.0, vec![TAU / 3.0; 3]).is_err());
    }

    #[test]
    fn residual_is_shift_invariant() {
        let p = random_equilateral(9, Dim::Two, 1.0, 3).unwrap();
        let a = vertices_to_angles(&p).unwrap();
        // Perturb so the residual is not zero.
        let mut beta = a.beta().to_vec();
        beta[2] += 0.3;
        beta[5] -= 0.3;
        let (c0, s0) = closure_residual(&beta);
        let r0 = c0.hypot(s0);
        assert!(r0 > 1e-3);
        for shift in 1..9 {
            let (c, s) = closure_residual_shifted(&beta, shift);
            assert!((c.hypot(s) - r0).abs() < 1e-12);
        }
    }

    #[test]
    fn mean_diagonal_regular() {
        for n in 4..14 {
            let a = AnglePolygon::new(1.0, 0.0, vec![TAU / n as f64; n]).unwrap();
            for m in 1..=n / 2 {
                let expected = crate::geometry::chord_regular(n, m, 1.0).unwrap();
                assert!((mean_diagonal_from_angles(&a, m).unwrap() - expected).abs() < 1e-12);
            }
        }
    }
}
