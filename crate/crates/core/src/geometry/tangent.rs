//! Tangent spaces of the equilateral-polygon manifold.
//!
//! The constraints are `g_i = ℓ − |y_i − y_{i+1}|`, `i = 1..N`. Directions
//! generated by Euclidean motions are tangent but change nothing, so the
//! basis returned here is the orthogonal complement of the constraint
//! gradients and of the motion generators inside `R^{Nd}`.

use nalgebra::{DMatrix, DVector};

use super::{PointSet, VertexPolygon};
use crate::linalg::{self, symmetric_eigen};
use crate::{Error, Result};

const RANK_TOL: f64 = 1e-9;

/// Orthonormal tangent directions, one per column (`N·d` rows).
#[derive(Clone, Debug)]
pub struct TangentBasis {
    pub vectors: DMatrix<f64>,
}

impl TangentBasis {
    pub fn len(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.ncols() == 0
    }

    pub fn direction(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k).iter().copied().collect()
    }

    /// Unit vector `Σ c_k t_k / |c|`.
    pub fn combine(&self, weights: &[f64]) -> Vec<f64> {
        let c = DVector::from_column_slice(weights);
        let mut v = &self.vectors * c;
        let n = v.norm();
        if n > 0.0 {
            v /= n;
        }
        v.iter().copied().collect()
    }
}

/// Rows `∇g_i`, as an `N × Nd` matrix.
pub fn constraint_jacobian(p: &PointSet) -> DMatrix<f64> {
    let n = p.len();
    let d = p.dim().get();
    let mut a = DMatrix::zeros(n, n * d);
    for i in 0..n {
        let j = (i + 1) % n;
        let (yi, yj) = (p.point(i), p.point(j));
        let len = linalg::distance(yi, yj);
        if len == 0.0 {
            continue;
        }
        for r in 0..d {
            let u = (yi[r] - yj[r]) / len;
            a[(i, i * d + r)] -= u;
            a[(i, j * d + r)] += u;
        }
    }
    a
}

/// Infinitesimal translations and rotations (about the centroid).
pub fn motion_generators(p: &PointSet) -> Vec<Vec<f64>> {
    let n = p.len();
    let d = p.dim().get();
    let c = p.centroid();
    let mut gens = Vec::new();
    for axis in 0..d {
        let mut t = vec![0.0; n * d];
        for j in 0..n {
            t[j * d + axis] = 1.0;
        }
        gens.push(t);
    }
    let rel = |j: usize| -> Vec<f64> { p.point(j).iter().zip(&c).map(|(y, c)| y - c).collect() };
    if d == 2 {
        let mut rot = vec![0.0; n * 2];
        for j in 0..n {
            let r = rel(j);
            rot[2 * j] = -r[1];
            rot[2 * j + 1] = r[0];
        }
        gens.push(rot);
    } else {
        for axis in 0..3 {
            let mut rot = vec![0.0; n * 3];
            for j in 0..n {
                let r = rel(j);
                let mut w = [0.0; 3];
                w[axis] = 1.0;
                rot[3 * j] = w[1] * r[2] - w[2] * r[1];
                rot[3 * j + 1] = w[2] * r[0] - w[0] * r[2];
                rot[3 * j + 2] = w[0] * r[1] - w[1] * r[0];
            }
            gens.push(rot);
        }
    }
    gens
}

/// Orthonormal basis of the column space of `m` (numerical rank).
fn range_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > RANK_TOL * smax.max(1.0))
        .collect();
    DMatrix::from_fn(m.nrows(), cols.len(), |r, c| u[(r, cols[c])])
}

/// Tangent directions at an arbitrary polygon, modulo Euclidean motions.
pub fn tangent_space(p: &VertexPolygon) -> Result<TangentBasis> {
    let nd = p.coords().len();
    let a = constraint_jacobian(p.points());
    let gens = motion_generators(p.points());
    let mut m = DMatrix::zeros(nd, a.nrows() + gens.len());
    m.view_mut((0, 0), (nd, a.nrows())).copy_from(&a.transpose());
    for (k, g) in gens.iter().enumerate() {
        m.column_mut(a.nrows() + k).copy_from_slice(g);
    }
    let q = range_basis(&m);
    let projector = DMatrix::<f64>::identity(nd, nd) - &q * q.transpose();
    let (values, vectors) = symmetric_eigen(&projector)?;
    let keep: Vec<usize> = (0..nd).filter(|&k| values[k] > 0.5).collect();
    let vectors = DMatrix::from_fn(nd, keep.len(), |r, c| vectors[(r, keep[c])]);
    Ok(TangentBasis { vectors })
}

/// Tangent basis at a regular polygon, checked against the expected count
/// `N(d−1) − dim E(d)`: `N − 3` in the plane, `2N − 6` in space.
pub fn tangent_basis(p: &VertexPolygon) -> Result<TangentBasis> {
    let n = p.n();
    let d = p.dim().get();
    let expected = (n * (d - 1)).saturating_sub(p.dim().motion_dim());
    let basis = tangent_space(p)?;
    if basis.len() != expected {
        return Err(Error::DegenerateConfiguration(format!(
            "tangent space has dimension {}, expected {expected}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// Removes from `v` its component along the constraint gradients, leaving
/// a first-order constraint-preserving direction.
pub fn project_onto_tangent(p: &PointSet, v: &[f64]) -> Vec<f64> {
    let a = constraint_jacobian(p);
    let rows = range_basis(&a.transpose());
    let v = DVector::from_column_slice(v);
    let coeff = rows.transpose() * &v;
    let out = v - rows * coeff;
    out.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{random_equilateral, regular_polygon, Dim};

    #[test]
    fn counts() {
        assert_eq!(tangent_basis(&regular_polygon(4, 1.0, Dim::Two).unwrap()).unwrap().len(), 1);
        assert_eq!(tangent_basis(&regular_polygon(6, 1.0, Dim::Two).unwrap()).unwrap().len(), 3);
        assert_eq!(tangent_basis(&regular_polygon(6, 1.0, Dim::Three).unwrap()).unwrap().len(), 6);
        assert_eq!(tangent_basis(&regular_polygon(3, 1.0, Dim::Two).unwrap()).unwrap().len(), 0);
    }

    #[test]
    fn directions_preserve_edges_and_skip_motions() {
        for dim in [Dim::Two, Dim::Three] {
            let p = regular_polygon(6, 1.0, dim).unwrap();
            let d = dim.get();
            let basis = tangent_basis(&p).unwrap();
            let gens = motion_generators(p.points());
            for k in 0..basis.len() {
                let xi = basis.direction(k);
                assert!((linalg::norm(&xi) - 1.0).abs() < 1e-12);
                for j in 0..6 {
                    let jn = (j + 1) % 6;
                    let dxi: Vec<f64> = (0..d).map(|r| xi[j * d + r] - xi[jn * d + r]).collect();
                    let dy: Vec<f64> = (0..d).map(|r| p.vertex(j)[r] - p.vertex(jn)[r]).collect();
                    assert!(linalg::dot(&dxi, &dy).abs() < 1e-10);
                }
                for g in &gens {
                    assert!(linalg::dot(&xi, g).abs() < 1e-10);
                }
                for l in 0..k {
                    assert!(linalg::dot(&xi, &basis.direction(l)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn projection_kills_constraint_component() {
        let p = random_equilateral(8, Dim::Three, 1.0, 5).unwrap();
        let v: Vec<f64> = (0..24).map(|k| (k as f64 * 0.37).sin()).collect();
        let t = project_onto_tangent(p.points(), &v);
        let a = constraint_jacobian(p.points());
        let av = a * DVector::from_column_slice(&t);
        assert!(av.norm() < 1e-12);
    }
}
