//! Shape functionals maximized by the regular polygon.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    diagonal_count, diagonal_sum, regular_polygon, retract, tangent_space, Dim, PointSet,
    VertexPolygon,
};
use crate::linalg;
use crate::spectral::ground_state;
use crate::{Error, Result};

/// Relative finite-difference step for ground-energy gradients.
const ENERGY_FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Objective {
    /// `D_m`, the total length of the `m`-diagonals.
    DiagonalSum { m: usize },
    /// `M_m = D_m / ν_m`.
    MeanDiagonal { m: usize },
    /// Ground-state energy `ε_1(α, P)`.
    GroundEnergy { alpha: f64 },
}

impl Objective {
    /// Parses `D<m>`, `M<m>` or `eps1` (the last needs `alpha`).
    pub fn parse(name: &str, alpha: Option<f64>) -> Result<Objective> {
        let order = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::param(format!("bad objective name {name:?}")))
        };
        if name == "eps1" {
            let alpha = alpha.ok_or_else(|| Error::param("objective eps1 needs --alpha"))?;
            return Ok(Objective::GroundEnergy { alpha });
        }
        if let Some(m) = name.strip_prefix('D') {
            return Ok(Objective::DiagonalSum { m: order(m)? });
        }
        if let Some(m) = name.strip_prefix('M') {
            return Ok(Objective::MeanDiagonal { m: order(m)? });
        }
        Err(Error::param(format!(
            "unknown objective {name:?} (expected D<m>, M<m> or eps1)"
        )))
    }

    pub fn name(&self) -> String {
        match self {
            Objective::DiagonalSum { m } => format!("D{m}"),
            Objective::MeanDiagonal { m } => format!("M{m}"),
            Objective::GroundEnergy { .. } => "eps1".to_string(),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            Objective::DiagonalSum { m } | Objective::MeanDiagonal { m } => {
                if m < 2 || m > n / 2 {
                    return Err(Error::param(format!(
                        "diagonal order m = {m} outside 2..={} for N = {n}",
                        n / 2
                    )));
                }
                Ok(())
            }
            Objective::GroundEnergy { alpha } if !alpha.is_finite() => {
                Err(Error::param("coupling must be finite"))
            }
            Objective::GroundEnergy { .. } => Ok(()),
        }
    }

    pub fn evaluate(&self, p: &VertexPolygon) -> Result<f64> {
        match *self {
            Objective::DiagonalSum { m } => Ok(diagonal_sum(p, m)?.total),
            Objective::MeanDiagonal { m } => Ok(diagonal_sum(p, m)?.mean),
            Objective::GroundEnergy { alpha } => Ok(ground_state(p.points(), alpha)?.energy),
        }
    }

    /// Value at the regular polygon with the same `N`, `d`, `ℓ`.
    pub fn reference(&self, n: usize, dim: Dim, edge: f64) -> Result<f64> {
        self.evaluate(&regular_polygon(n, edge, dim)?)
    }

    /// Gradient in `R^{Nd}`: analytic for the diagonal functionals, central
    /// differences along the tangent space for the energy.
    pub fn gradient(&self, p: &VertexPolygon) -> Result<Vec<f64>> {
        match *self {
            Objective::DiagonalSum { m } => Ok(diagonal_gradient(p.points(), m)),
            Objective::MeanDiagonal { m } => {
                let nu = diagonal_count(p.n(), m)? as f64;
                Ok(diagonal_gradient(p.points(), m)
                    .into_iter()
                    .map(|g| g / nu)
                    .collect())
            }
            Objective::GroundEnergy { .. } => {
                let basis = tangent_space(p)?;
                let h = ENERGY_FD_STEP * p.edge();
                let mut grad = vec![0.0; p.coords().len()];
                for k in 0..basis.len() {
                    let t = basis.direction(k);
                    let shifted = |s: f64| -> Result<f64> {
                        let c: Vec<f64> =
                            p.coords().iter().zip(&t).map(|(y, t)| y + s * t).collect();
                        self.evaluate(&retract(&PointSet::new(p.dim(), c)?, p.edge())?)
                    };
                    let slope = (shifted(h)? - shifted(-h)?) / (2.0 * h);
                    grad.iter_mut().zip(&t).for_each(|(g, t)| *g += slope * t);
                }
                Ok(grad)
            }
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::GroundEnergy { alpha } => write!(f, "eps1(alpha={alpha})"),
            other => f.write_str(&other.name()),
        }
    }
}

/// `∇ D_m`: each vertex collects the unit vectors from its `m`-partners.
pub(crate) fn diagonal_gradient(p: &PointSet, m: usize) -> Vec<f64> {
    let n = p.len();
    let d = p.dim().get();
    let mut grad = vec![0.0; n * d];
    let pairs = if 2 * m == n { n / 2 } else { n };
    for i in 0..pairs {
        let j = (i + m) % n;
        let (yi, yj) = (p.point(i), p.point(j));
        let r = linalg::distance(yi, yj);
        if r == 0.0 {
            continue;
        }
        for k in 0..d {
            let u = (yi[k] - yj[k]) / r;
            grad[i * d + k] += u;
            grad[j * d + k] -= u;
        }
    }
    grad
}
