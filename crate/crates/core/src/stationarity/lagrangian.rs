//! The Lagrangian `K_m = f_m + Σ_r λ_r g_r` of the diagonal problem.
//!
//! `f_m = (1/N) Σ_i |y_i − y_{i+m}|` and `g_r = ℓ − |y_r − y_{r+1}|`.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::geometry::{upsilon, PointSet, VertexPolygon};
use crate::linalg;
use crate::{Error, Result};

fn check_order(n: usize, m: usize) -> Result<()> {
    if n < 3 || m < 1 || m > n / 2 {
        return Err(Error::param(format!("m = {m} outside 1..={} for N = {n}", n / 2)));
    }
    Ok(())
}

/// `σ_m = sin²(πm/N) / sin²(π/N)`.
pub fn sigma_m(n: usize, m: usize) -> Result<f64> {
    check_order(n, m)?;
    let x = PI / n as f64;
    Ok(((m as f64 * x).sin() / x.sin()).powi(2))
}

/// `σ_m` as the ratio `Σ_{n=0}^{m−1} sin((2n+1)π/N) / sin(π/N)`.
pub fn sigma_m_ratio_of_sums(n: usize, m: usize) -> Result<f64> {
    check_order(n, m)?;
    let x = PI / n as f64;
    let s: f64 = (0..m).map(|k| ((2 * k + 1) as f64 * x).sin()).sum();
    Ok(s / x.sin())
}

/// Common multiplier `λ = σ_m / (N Υ_m)` making the regular polygon a
/// critical point of `K_m`.
pub fn regular_multiplier(n: usize, m: usize) -> Result<f64> {
    Ok(sigma_m(n, m)? / (n as f64 * upsilon(n, m)?))
}

/// `K_m(y)` for arbitrary points (used off the constraint set by
/// finite-difference checks).
pub fn lagrangian(points: &PointSet, edge: f64, m: usize, multipliers: &[f64]) -> Result<f64> {
    let n = points.len();
    check_order(n, m)?;
    if multipliers.len() != n {
        return Err(Error::param("need one multiplier per edge"));
    }
    let f: f64 = (0..n).map(|i| points.distance(i, i + m)).sum::<f64>() / n as f64;
    let g: f64 = (0..n)
        .map(|r| multipliers[r] * (edge - points.distance(r, r + 1)))
        .sum();
    Ok(f + g)
}

/// `∇_j K_m` for `j = 1..N`, flattened to `N·d` entries.
pub fn grad_km(points: &PointSet, m: usize, multipliers: &[f64]) -> Result<Vec<f64>> {
    let n = points.len();
    check_order(n, m)?;
    if multipliers.len() != n {
        return Err(Error::param("need one multiplier per edge"));
    }
    let d = points.dim().get();
    let mut grad = vec![0.0; n * d];
    let unit = |a: usize, b: usize| -> Result<Vec<f64>> {
        let (ya, yb) = (points.point(a), points.point(b));
        let r = linalg::distance(ya, yb);
        if r == 0.0 {
            return Err(Error::DegenerateConfiguration(format!(
                "vertices {} and {} coincide",
                a % n,
                b % n
            )));
        }
        Ok(ya.iter().zip(yb).map(|(x, y)| (x - y) / r).collect())
    };
    let inv_n = 1.0 / n as f64;
    for j in 0..n {
        let fwd = unit(j, j + m)?;
        let bwd = unit(j, j + n - m)?;
        let next = unit(j, j + 1)?;
        let prev = unit(j, j + n - 1)?;
        let lam_j = multipliers[j];
        let lam_prev = multipliers[(j + n - 1) % n];
        for k in 0..d {
            grad[j * d + k] =
                inv_n * (fwd[k] + bwd[k]) - lam_j * next[k] - lam_prev * prev[k];
        }
    }
    Ok(grad)
}

fn diff(xi: &[f64], d: usize, a: usize, b: usize) -> Vec<f64> {
    (0..d).map(|k| xi[a * d + k] - xi[b * d + k]).collect()
}

fn check_regular(p: &VertexPolygon, m: usize, xi_len: Option<usize>) -> Result<()> {
    check_order(p.n(), m)?;
    if let Some(len) = xi_len {
        if len != p.coords().len() {
            return Err(Error::param(format!(
                "perturbation has {len} components, expected {}",
                p.coords().len()
            )));
        }
    }
    Ok(())
}

/// Hessian quadratic form of `K_m` at the regular polygon `p̃`:
/// `(NℓΥ_m)⁻¹ Σ_j { |Δ_m ξ_j|² − (Δ_m ξ_j · Δ_m ỹ_j)² / |Δ_m ỹ_j|² − σ_m |Δ_1 ξ_j|² }`
/// with `Δ_k ξ_j = ξ_j − ξ_{j+k}`.
///
/// The edge-constraint curvature term `(Δ_1 ξ · Δ_1 ỹ)²` is absent, so this
/// equals `ξᵀ ∇²K_m ξ` for tangent `ξ` only.
pub fn hessian_form(p: &VertexPolygon, m: usize, xi: &[f64]) -> Result<f64> {
    check_regular(p, m, Some(xi.len()))?;
    let n = p.n();
    let d = p.dim().get();
    let sigma = sigma_m(n, m)?;
    let y = p.coords();
    let mut s = 0.0;
    for j in 0..n {
        let jm = (j + m) % n;
        let jn = (j + 1) % n;
        let dxm = diff(xi, d, j, jm);
        let dym = diff(y, d, j, jm);
        let dx1 = diff(xi, d, j, jn);
        let proj = linalg::dot(&dxm, &dym);
        s += linalg::dot(&dxm, &dxm) - proj * proj / linalg::dot(&dym, &dym)
            - sigma * linalg::dot(&dx1, &dx1);
    }
    Ok(s / (n as f64 * p.edge() * upsilon(n, m)?))
}

/// The first two bracket terms of [`hessian_form`] summed over `j`
/// (unscaled); non-negative by Cauchy–Schwarz.
pub fn schwarz_terms(p: &VertexPolygon, m: usize, xi: &[f64]) -> Result<f64> {
    check_regular(p, m, Some(xi.len()))?;
    let n = p.n();
    let d = p.dim().get();
    let y = p.coords();
    let mut s = 0.0;
    for j in 0..n {
        let jm = (j + m) % n;
        let dxm = diff(xi, d, j, jm);
        let dym = diff(y, d, j, jm);
        let proj = linalg::dot(&dxm, &dym);
        s += linalg::dot(&dxm, &dxm) - proj * proj / linalg::dot(&dym, &dym);
    }
    Ok(s)
}

/// Symmetric `Nd × Nd` matrix `H` with `ξᵀ H ξ = hessian_form(p, m, ξ)`.
pub fn hessian_matrix(p: &VertexPolygon, m: usize) -> Result<DMatrix<f64>> {
    check_regular(p, m, None)?;
    let n = p.n();
    let d = p.dim().get();
    let sigma = sigma_m(n, m)?;
    let scale = 1.0 / (n as f64 * p.edge() * upsilon(n, m)?);
    let y = p.coords();
    let mut h = DMatrix::zeros(n * d, n * d);
    let mut add_pair = |a: usize, b: usize, block: &DMatrix<f64>| {
        for r in 0..d {
            for s in 0..d {
                let v = scale * block[(r, s)];
                h[(a * d + r, a * d + s)] += v;
                h[(b * d + r, b * d + s)] += v;
                h[(a * d + r, b * d + s)] -= v;
                h[(b * d + r, a * d + s)] -= v;
            }
        }
    };
    let edge_block = DMatrix::<f64>::identity(d, d) * -sigma;
    for j in 0..n {
        let jm = (j + m) % n;
        let dym = diff(y, d, j, jm);
        let len2 = linalg::dot(&dym, &dym);
        let block = DMatrix::from_fn(d, d, |r, s| {
            let id = if r == s { 1.0 } else { 0.0 };
            id - dym[r] * dym[s] / len2
        });
        add_pair(j, jm, &block);
        add_pair(j, (j + 1) % n, &edge_block);
    }
    Ok(h)
}
