//! Secular equation `λ_min(Γ(κ)) = 0`.
//!
//! `κ ↦ λ_min(Γ(κ))` is strictly increasing (equivalently, decreasing in
//! the energy `−κ²`) and tends to `+∞` as `κ → ∞`, so a sign change
//! brackets the unique root `κ_1`. The bracket is grown geometrically from
//! the single-point root, narrowed by bisection, and finished by
//! Illinois-safeguarded secant steps.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{assemble, pair_distances, SpectralResult, EULER_GAMMA};
use crate::geometry::{Dim, PointSet};
use crate::linalg::{min_eigenpair, symmetric_eigen};
use crate::{Error, Result};

pub const KAPPA_MIN: f64 = 1e-8;
pub const KAPPA_MAX: f64 = 1e8;
/// Largest accepted `|λ_min(Γ(κ_1))|`.
pub const RESIDUAL_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub residual_tol: f64,
    /// Relative bracket width at which bisection hands over to secant.
    pub bisection_width: f64,
    pub max_secant_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            residual_tol: RESIDUAL_TOL,
            bisection_width: 1e-3,
            max_secant_iter: 200,
        }
    }
}

/// Whether `−Δ_{α,Y}` has a negative eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Existence {
    pub exists: bool,
    /// Critical coupling in space (`exists ⇔ α < α_crit`); `None` in the
    /// plane, where a bound state exists for every `α`.
    pub alpha_crit: Option<f64>,
}

/// In the plane always true. In space, `lim_{κ→0} λ_min(Γ(κ)) = α − μ_max`
/// with `μ_max` the top eigenvalue of `[(1 − δ_ij)/(4π|y_i − y_j|)]`.
pub fn existence_check(points: &PointSet, alpha: f64) -> Result<Existence> {
    let dist = pair_distances(points)?;
    match points.dim() {
        Dim::Two => Ok(Existence {
            exists: true,
            alpha_crit: None,
        }),
        Dim::Three => {
            let n = points.len();
            let m = DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    0.0
                } else {
                    1.0 / (4.0 * PI * dist[(i, j)])
                }
            });
            let (values, _) = symmetric_eigen(&m)?;
            let alpha_crit = *values.last().unwrap_or(&0.0);
            Ok(Existence {
                exists: alpha < alpha_crit,
                alpha_crit: Some(alpha_crit),
            })
        }
    }
}

/// Root of the one-point secular equation `α = ξ(κ)`; a lower bound for
/// `κ_1` of any configuration.
fn single_point_kappa(dim: Dim, alpha: f64) -> f64 {
    let k = match dim {
        Dim::Three if alpha < 0.0 => -4.0 * PI * alpha,
        Dim::Three => 1.0,
        Dim::Two => 2.0 * (-2.0 * PI * alpha - EULER_GAMMA).exp(),
    };
    if k.is_finite() {
        k.clamp(KAPPA_MIN, KAPPA_MAX)
    } else {
        KAPPA_MAX
    }
}

/// Ground state `ε_1 = −κ_1²` and the kernel vector of `Γ(κ_1)`.
pub fn ground_state(points: &PointSet, alpha: f64) -> Result<SpectralResult> {
    ground_state_with(points, alpha, &SolverOptions::default())
}

pub fn ground_state_with(
    points: &PointSet,
    alpha: f64,
    opts: &SolverOptions,
) -> Result<SpectralResult> {
    if !alpha.is_finite() {
        return Err(Error::param("coupling must be finite"));
    }
    let existence = existence_check(points, alpha)?;
    if !existence.exists {
        return Err(Error::NoDiscreteSpectrum {
            alpha,
            alpha_crit: existence.alpha_crit,
        });
    }
    let dist = pair_distances(points)?;
    let eval = |kappa: f64| -> Result<(f64, f64)> {
        let g = assemble(points, &dist, alpha, kappa);
        let scale = g.matrix.amax() * g.n() as f64;
        Ok((min_eigenpair(&g.matrix)?.value, scale))
    };
    let no_root = || Error::NoDiscreteSpectrum {
        alpha,
        alpha_crit: existence.alpha_crit,
    };

    // Bracket [lo, hi] with f(lo) < 0 < f(hi).
    let seed = single_point_kappa(points.dim(), alpha);
    let (f0, _) = eval(seed)?;
    let (mut lo, mut flo, mut hi, mut fhi);
    if f0 < 0.0 {
        (lo, flo) = (seed, f0);
        loop {
            if lo >= KAPPA_MAX {
                return Err(no_root());
            }
            let k = (4.0 * lo).min(KAPPA_MAX);
            let (fk, _) = eval(k)?;
            if fk >= 0.0 {
                (hi, fhi) = (k, fk);
                break;
            }
            (lo, flo) = (k, fk);
        }
    } else {
        (hi, fhi) = (seed, f0);
        loop {
            if hi <= KAPPA_MIN {
                return Err(no_root());
            }
            let k = (0.25 * hi).max(KAPPA_MIN);
            let (fk, _) = eval(k)?;
            if fk < 0.0 {
                (lo, flo) = (k, fk);
                break;
            }
            (hi, fhi) = (k, fk);
        }
    }

    let mut root = None;
    if fhi == 0.0 {
        root = Some(hi);
    }
    while root.is_none() && hi - lo > opts.bisection_width * hi {
        let mid = 0.5 * (lo + hi);
        let (fm, _) = eval(mid)?;
        if fm == 0.0 {
            root = Some(mid);
        } else if fm < 0.0 {
            (lo, flo) = (mid, fm);
        } else {
            (hi, fhi) = (mid, fm);
        }
    }

    // Illinois: secant on the bracket, halving the stale end's weight.
    let (mut wlo, mut whi) = (flo, fhi);
    let mut side = 0i8;
    let mut best = if flo.abs() < fhi.abs() { (lo, flo) } else { (hi, fhi) };
    for _ in 0..opts.max_secant_iter {
        if root.is_some() || hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
        let mut x = (lo * whi - hi * wlo) / (whi - wlo);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let (fx, scale) = eval(x)?;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 || fx.abs() <= 4.0 * f64::EPSILON * scale {
            root = Some(x);
            break;
        }
        if fx < 0.0 {
            (lo, wlo) = (x, fx);
            if side == -1 {
                whi *= 0.5;
            }
            side = -1;
        } else {
            (hi, whi) = (x, fx);
            if side == 1 {
                wlo *= 0.5;
            }
            side = 1;
        }
    }
    let kappa = root.unwrap_or(best.0);

    let g = assemble(points, &dist, alpha, kappa);
    let pair = min_eigenpair(&g.matrix)?;
    let residual = pair.value.abs();
    if residual > opts.residual_tol {
        return Err(Error::Numerical(format!(
            "secular equation residual {residual:.3e} at kappa = {kappa}"
        )));
    }
    Ok(SpectralResult {
        kappa,
        energy: -kappa * kappa,
        eigenvector: pair.vector.iter().copied().collect(),
        residual,
        bracket_width: hi - lo,
    })
}

/// `(κ, λ_min(Γ(κ)))` on a geometric grid of `count` points in
/// `[kappa_min, kappa_max]`.
pub fn lambda_min_grid(
    points: &PointSet,
    alpha: f64,
    kappa_min: f64,
    kappa_max: f64,
    count: usize,
) -> Result<Vec<(f64, f64)>> {
    if !(kappa_min > 0.0 && kappa_max > kappa_min) || count < 2 {
        return Err(Error::param(format!(
            "bad kappa grid {kappa_min}:{kappa_max}:{count}"
        )));
    }
    let dist = pair_distances(points)?;
    let ratio = (kappa_max / kappa_min).ln() / (count - 1) as f64;
    (0..count)
        .map(|i| {
            let kappa = if i + 1 == count {
                kappa_max
            } else {
                kappa_min * (ratio * i as f64).exp()
            };
            let g = assemble(points, &dist, alpha, kappa);
            Ok((kappa, min_eigenpair(&g.matrix)?.value))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_polygon;
    use crate::spectral::xi;

    fn single(dim: Dim) -> PointSet {
        PointSet::new(dim, vec![0.0; dim.get()]).unwrap()
    }

    #[test]
    fn single_point_space() {
        for alpha in [-0.1, -1.0, -10.0] {
            let r = ground_state(&single(Dim::Three), alpha).unwrap();
            let want = -4.0 * PI * alpha;
            assert!(((r.kappa - want) / want).abs() < 1e-12);
            assert!((r.energy + 16.0 * PI * PI * alpha * alpha).abs() < 1e-9 * want * want);
        }
        let e = ground_state(&single(Dim::Three), 0.5).unwrap_err();
        assert!(matches!(e, Error::NoDiscreteSpectrum { alpha_crit: Some(c), .. } if c == 0.0));
    }

    #[test]
    fn single_point_plane() {
        for alpha in [-1.0, 0.0, 1.0] {
            let r = ground_state(&single(Dim::Two), alpha).unwrap();
            let want = 2.0 * (-2.0 * PI * alpha - EULER_GAMMA).exp();
            assert!(((r.kappa - want) / want).abs() < 1e-12, "alpha {alpha}");
        }
    }

    #[test]
    fn symmetric_pair_in_space() {
        // α + κ/4π = e^{−κ}/4π at κ = 1.
        let alpha = ((-1f64).exp() - 1.0) / (4.0 * PI);
        let p = PointSet::new(Dim::Three, vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        let r = ground_state(&p, alpha).unwrap();
        assert!((r.kappa - 1.0).abs() < 1e-12);
        assert!(r.residual <= RESIDUAL_TOL);
        assert!(r.bracket_width >= 0.0);
    }

    #[test]
    fn existence() {
        let p = PointSet::new(Dim::Three, vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        let e = existence_check(&p, 0.0).unwrap();
        assert!((e.alpha_crit.unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert!(e.exists);
        assert!(!existence_check(&p, 0.1).unwrap().exists);
        let e = existence_check(&single(Dim::Three), -1e-9).unwrap();
        assert_eq!(e.alpha_crit, Some(0.0));
        let plane = regular_polygon(5, 1.0, Dim::Two).unwrap();
        for alpha in [-100.0, 0.0, 100.0] {
            let e = existence_check(plane.points(), alpha).unwrap();
            assert!(e.exists && e.alpha_crit.is_none());
        }
    }

    #[test]
    fn near_critical_coupling() {
        let p = regular_polygon(4, 1.0, Dim::Three).unwrap();
        let crit = existence_check(p.points(), 0.0).unwrap().alpha_crit.unwrap();
        let r = ground_state(p.points(), crit - 1e-3).unwrap();
        assert!(r.kappa > 0.0 && r.kappa < 0.1);
    }

    #[test]
    fn grid_is_increasing() {
        let p = regular_polygon(6, 1.0, Dim::Two).unwrap();
        let grid = lambda_min_grid(p.points(), 0.3, 1e-2, 1e2, 100).unwrap();
        assert_eq!(grid.len(), 100);
        assert!(grid.windows(2).all(|w| w[1].1 > w[0].1));
        assert_eq!(grid[99].0, 1e2);
    }

    #[test]
    fn grid_endpoints_single_point() {
        let g = lambda_min_grid(&single(Dim::Three), -0.2, 0.5, 2.0, 3).unwrap();
        assert!((g[0].1 - (-0.2 - xi(Dim::Three, 0.5))).abs() < 1e-16);
    }
}
