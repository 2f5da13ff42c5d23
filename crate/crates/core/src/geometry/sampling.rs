//! Random equilateral polygons and the closure projection.
//!
//! A polygon is rebuilt from unit edge directions `u_1..u_N`; it closes iff
//! `c = Σ u_k = 0`. Gauss–Newton on the product of spheres takes the
//! minimum-norm step `u_k ← normalize(u_k + P_k v)` with
//! `P_k = I − u_k u_kᵀ` and `v = −(N I − Σ u_k u_kᵀ)⁻¹ c`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{Dim, PointSet, VertexPolygon, GEOMETRY_TOL};
use crate::linalg;
use crate::{Error, Result};

/// Closure defect (in units of `ℓ`) accepted by the projection.
pub const CLOSURE_TOL: f64 = 1e-12;

/// Fresh starts tried by [`random_equilateral`] before giving up.
pub const MAX_SAMPLER_RESTARTS: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct ClosureOptions {
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            tolerance: CLOSURE_TOL,
            max_iter: 200,
        }
    }
}

fn defect(dirs: &[f64], d: usize) -> Vec<f64> {
    let mut c = vec![0.0; d];
    for u in dirs.chunks_exact(d) {
        for (ck, uk) in c.iter_mut().zip(u) {
            *ck += uk;
        }
    }
    c
}

fn normalize(v: &mut [f64]) -> bool {
    let n = linalg::norm(v);
    if !(n > 0.0) || !n.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= n);
    true
}

/// Projects unit directions (flat, `d` per edge) onto the closed set
/// `Σ u_k = 0`. Returns the final defect `|Σ u_k|`; errors when the
/// tolerance is not reached within `max_iter` iterations.
pub fn close_directions(dirs: &mut [f64], d: usize, opts: ClosureOptions) -> Result<f64> {
    let n = dirs.len() / d;
    for u in dirs.chunks_exact_mut(d) {
        if !normalize(u) {
            return Err(Error::Sampler("zero-length edge direction".into()));
        }
    }
    let polish = (opts.tolerance * 1e-2).max(1e-15 * (n as f64).sqrt());
    let mut c = defect(dirs, d);
    let mut res = linalg::norm(&c);
    let mut trial = dirs.to_vec();
    for _ in 0..opts.max_iter {
        if res <= polish {
            break;
        }
        let mut a = DMatrix::<f64>::identity(d, d) * n as f64;
        for u in dirs.chunks_exact(d) {
            for r in 0..d {
                for s in 0..d {
                    a[(r, s)] -= u[r] * u[s];
                }
            }
        }
        let Some(v) = a.lu().solve(&DVector::from_column_slice(&c)) else {
            break;
        };
        let v: Vec<f64> = v.iter().map(|x| -x).collect();
        let mut step = 1.0;
        let mut improved = false;
        while step > 1e-8 {
            for (t, u) in trial.chunks_exact_mut(d).zip(dirs.chunks_exact(d)) {
                let uv = linalg::dot(u, &v);
                for k in 0..d {
                    t[k] = u[k] + step * (v[k] - uv * u[k]);
                }
                normalize(t);
            }
            let c_new = defect(&trial, d);
            let r_new = linalg::norm(&c_new);
            if r_new < res {
                dirs.copy_from_slice(&trial);
                c = c_new;
                res = r_new;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    if res <= opts.tolerance {
        Ok(res)
    } else {
        Err(Error::Sampler(format!(
            "closure projection stalled at defect {res:.3e}"
        )))
    }
}

/// Rebuilds vertices from `y_1` and closed unit directions.
fn polygon_from_directions(
    dim: Dim,
    start: &[f64],
    dirs: &[f64],
    edge: f64,
    tol: f64,
) -> Result<VertexPolygon> {
    let d = dim.get();
    let n = dirs.len() / d;
    let mut coords = Vec::with_capacity(n * d);
    coords.extend_from_slice(start);
    for k in 0..n - 1 {
        for r in 0..d {
            let prev = coords[k * d + r];
            coords.push(prev + edge * dirs[k * d + r]);
        }
    }
    VertexPolygon::with_tolerance(PointSet::new(dim, coords)?, edge, tol.max(GEOMETRY_TOL))
}

/// Random closed equilateral polygon, deterministic in `seed`.
///
/// Edge directions are drawn i.i.d. uniform on the unit sphere (circle)
/// and projected onto the closure constraint; non-converging draws are
/// discarded and redrawn.
pub fn random_equilateral(n: usize, dim: Dim, edge: f64, seed: u64) -> Result<VertexPolygon> {
    if n < 3 {
        return Err(Error::param(format!("a polygon needs N >= 3, got {n}")));
    }
    if !(edge > 0.0 && edge.is_finite()) {
        return Err(Error::param(format!("edge length must be positive, got {edge}")));
    }
    let d = dim.get();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dirs = vec![0.0; n * d];
    for _ in 0..MAX_SAMPLER_RESTARTS {
        for x in dirs.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        if close_directions(&mut dirs, d, ClosureOptions::default()).is_ok() {
            return polygon_from_directions(dim, &vec![0.0; d], &dirs, edge, GEOMETRY_TOL);
        }
    }
    Err(Error::Sampler(format!(
        "no closed polygon after {MAX_SAMPLER_RESTARTS} restarts"
    )))
}

/// Maps an arbitrary vertex chain back onto the equilateral closed
/// polygons: normalizes every edge (closing edge included), closes the
/// directions, and rebuilds from the first vertex.
pub fn retract(points: &PointSet, edge: f64) -> Result<VertexPolygon> {
    retract_with_tolerance(points, edge, CLOSURE_TOL)
}

pub fn retract_with_tolerance(points: &PointSet, edge: f64, tolerance: f64) -> Result<VertexPolygon> {
    let n = points.len();
    if n < 3 {
        return Err(Error::param("a polygon needs N >= 3 vertices"));
    }
    let d = points.dim().get();
    let mut dirs = Vec::with_capacity(n * d);
    for k in 0..n {
        let (a, b) = (points.point(k), points.point(k + 1));
        dirs.extend(b.iter().zip(a).map(|(y, x)| y - x));
    }
    let opts = ClosureOptions {
        tolerance,
        ..ClosureOptions::default()
    };
    close_directions(&mut dirs, d, opts)?;
    polygon_from_directions(points.dim(), points.point(0), &dirs, edge, GEOMETRY_TOL)
}
