//! Second-order analysis of the diagonal problem at the regular polygon:
//! Lagrange multipliers, the Hessian form, the reduced form `S_m`, the
//! mode inequalities, and numerical local-maximality checks.

mod forms;
mod lagrangian;
mod local;
mod sweep;

use serde::Serialize;

use crate::geometry::{regular_polygon, tangent_basis, upsilon, Dim, PointSet, VertexPolygon};
use crate::linalg::{self, symmetric_eigen};
use crate::Result;

pub use forms::{s_eigenvalue, s_form, s_form_eigenvalues, s_form_matrix, s_form_spectrum, Mode};
pub use lagrangian::{
    grad_km, hessian_form, hessian_matrix, lagrangian, regular_multiplier, schwarz_terms, sigma_m,
    sigma_m_ratio_of_sums,
};
pub use local::{
    local_max_verify, FitRow, LocalMaxConfig, LocalMaxReport, TrialFit, DEFAULT_AMPLITUDES,
    RESOLUTION_ULPS, STABILIZATION_TOL,
};
pub use sweep::{
    chebyshev_u, closing_inequality_scan, inequality_sweep, sweep_row, sweep_rows, ClosingScan,
    SecondMinimum, SweepRow, SweepSummary, CLOSING_TOL,
};

/// Largest admissible `‖∇K_m(p̃)‖`.
pub const STATIONARITY_TOL: f64 = 1e-10;

/// Normalized restricted eigenvalues must lie below `−NEGATIVITY_MARGIN`.
pub const NEGATIVITY_MARGIN: f64 = 1e-12;

/// Relative step of the central second difference in [`hessian_second_difference`].
pub const HESSIAN_FD_STEP: f64 = 1e-4;

/// Second-order data of `K_m` at the regular `N`-gon.
#[derive(Clone, Debug, Serialize)]
pub struct StationarityReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub edge: f64,
    pub sigma: f64,
    /// Common multiplier `λ = σ_m/(NΥ_m)`.
    pub multiplier: f64,
    pub gradient_norm: f64,
    /// Eigenvalues of the Hessian form on the tangent basis, multiplied by
    /// `NℓΥ_m` (ascending).
    pub restricted_eigenvalues: Vec<f64>,
    pub max_restricted_eigenvalue: f64,
    pub nonnegative_count: usize,
    /// Mode inequality rows for this `(N, m)`.
    pub modes: Vec<SweepRow>,
    pub passed: bool,
}

/// `K_m` at the regular polygon with the multipliers making it critical.
fn regular_lagrangian(p: &VertexPolygon, m: usize, points: &PointSet) -> Result<f64> {
    let lam = regular_multiplier(p.n(), m)?;
    lagrangian(points, p.edge(), m, &vec![lam; p.n()])
}

/// `(K(p̃ + hξ) + K(p̃ − hξ) − 2K(p̃)) / h²` with `h = step·ℓ`.
pub fn hessian_second_difference(p: &VertexPolygon, m: usize, xi: &[f64], step: f64) -> Result<f64> {
    let h = step * p.edge();
    let shifted = |s: f64| -> Result<f64> {
        let c = p.coords().iter().zip(xi).map(|(y, x)| y + s * x).collect();
        regular_lagrangian(p, m, &PointSet::new(p.dim(), c)?)
    };
    Ok((shifted(h)? + shifted(-h)? - 2.0 * shifted(0.0)?) / (h * h))
}

pub fn stationarity_report(n: usize, m: usize, dim: Dim, edge: f64) -> Result<StationarityReport> {
    let p = regular_polygon(n, edge, dim)?;
    let sigma = sigma_m(n, m)?;
    let multiplier = regular_multiplier(n, m)?;
    let gradient_norm = linalg::norm(&grad_km(p.points(), m, &vec![multiplier; n])?);

    let basis = tangent_basis(&p)?;
    let h = hessian_matrix(&p, m)?;
    let restricted = basis.vectors.transpose() * &h * &basis.vectors;
    let scale = n as f64 * edge * upsilon(n, m)?;
    let (values, _) = symmetric_eigen(&restricted)?;
    let restricted_eigenvalues: Vec<f64> = values.iter().map(|v| v * scale).collect();
    let max_restricted_eigenvalue = restricted_eigenvalues
        .last()
        .copied()
        .unwrap_or(f64::NEG_INFINITY);
    let nonnegative_count = restricted_eigenvalues
        .iter()
        .filter(|&&v| v >= -NEGATIVITY_MARGIN)
        .count();
    let modes: Vec<SweepRow> = if m >= 2 {
        (2..=n - 2).map(|r| sweep_row(n, m, r)).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(StationarityReport {
        n,
        m,
        d: dim.get(),
        edge,
        sigma,
        multiplier,
        gradient_norm,
        restricted_eigenvalues,
        max_restricted_eigenvalue,
        nonnegative_count,
        passed: gradient_norm <= STATIONARITY_TOL
            && nonnegative_count == 0
            && modes.iter().all(|r| r.sine_negative && r.consistent()),
        modes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random_equilateral;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn regular_is_critical() {
        for dim in [Dim::Two, Dim::Three] {
            for n in 3..=24 {
                for m in 1..=n / 2 {
                    let p = regular_polygon(n, 1.0, dim).unwrap();
                    let lam = regular_multiplier(n, m).unwrap();
                    let g = grad_km(p.points(), m, &vec![lam; n]).unwrap();
                    assert!(linalg::norm(&g) <= STATIONARITY_TOL, "N={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn gradient_matches_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (n, m, dim) in [(7, 2, Dim::Two), (8, 4, Dim::Three), (9, 3, Dim::Three)] {
            let p = random_equilateral(n, dim, 1.0, 5).unwrap();
            let lam: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let g = grad_km(p.points(), m, &lam).unwrap();
            let h = 1e-5;
            for k in 0..p.coords().len() {
                let eval = |s: f64| {
                    let mut c = p.coords().to_vec();
                    c[k] += s;
                    lagrangian(&PointSet::new(dim, c).unwrap(), 1.0, m, &lam).unwrap()
                };
                let fd = (eval(h) - eval(-h)) / (2.0 * h);
                assert!((fd - g[k]).abs() < 1e-6, "N={n} m={m} k={k}");
            }
        }
    }

    #[test]
    fn form_matches_second_difference_on_tangent() {
        for (n, m, dim) in [(6, 2, Dim::Two), (7, 3, Dim::Three), (8, 4, Dim::Two)] {
            let p = regular_polygon(n, 1.0, dim).unwrap();
            let basis = tangent_basis(&p).unwrap();
            for k in 0..basis.len() {
                let xi = basis.direction(k);
                let q = hessian_form(&p, m, &xi).unwrap();
                let fd = hessian_second_difference(&p, m, &xi, HESSIAN_FD_STEP).unwrap();
                assert!(((q - fd) / q).abs() < 1e-5, "N={n} m={m}: {q} vs {fd}");
            }
        }
    }

    #[test]
    fn hexagon_report() {
        let r = stationarity_report(6, 2, Dim::Two, 1.0).unwrap();
        assert!(r.passed);
        assert_eq!(r.restricted_eigenvalues.len(), 3);
        assert!((r.sigma - 3.0).abs() < 1e-14);
        let p = regular_polygon(6, 1.0, Dim::Two).unwrap();
        let basis = tangent_basis(&p).unwrap();
        for k in 0..basis.len() {
            assert!(hessian_form(&p, 2, &basis.direction(k)).unwrap() < 0.0);
        }
    }

    #[test]
    fn schwarz_terms_nonnegative() {
        let p = regular_polygon(9, 1.0, Dim::Three).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let xi: Vec<f64> = (0..27).map(|_| rng.random_range(-1.0..1.0)).collect();
            for m in 2..=4 {
                assert!(schwarz_terms(&p, m, &xi).unwrap() >= 0.0);
            }
        }
    }
}
