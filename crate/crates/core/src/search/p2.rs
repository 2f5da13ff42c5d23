//! Global check of the bound `M_2 ≤ 2ℓ cos(π/N)` on random polygons.
//!
//! In the plane `M_2 = (2ℓ/N) Σ cos(β_i/2)` in the angle chart, and the
//! bound follows from concavity of the cosine with equality only for equal
//! bending angles. In space the run only records what happens.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{
    diagonal_sum, mean_diagonal_from_angles, random_equilateral, regular_polygon,
    vertices_to_angles, Dim,
};
use crate::seeds;
use crate::{Error, Result};

/// Slack allowed above the bound.
pub const P2_BOUND_TOL: f64 = 1e-9;

/// Allowed disagreement between the two charts.
pub const P2_CHART_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct P2Report {
    pub n: usize,
    pub d: usize,
    pub edge: f64,
    pub samples: usize,
    pub seed: u64,
    /// `2ℓ cos(π/N)`.
    pub bound: f64,
    /// `M_2` of the regular polygon minus the bound.
    pub regular_excess: f64,
    /// Samples with `M_2 > bound + tol`.
    pub violations: usize,
    /// Largest `M_2 − bound` over the samples.
    pub max_excess: f64,
    /// Planar samples with unequal angles that still reach the bound.
    pub non_strict: usize,
    /// Largest `|M_2(angles) − M_2(vertices)|` (planar only).
    pub max_chart_difference: Option<f64>,
    pub exploratory: bool,
    /// `None` for exploratory runs.
    pub passed: Option<bool>,
}

struct Sample {
    excess: f64,
    chart_difference: Option<f64>,
    non_strict: bool,
}

fn sample(n: usize, dim: Dim, edge: f64, bound: f64, seed: u64) -> Result<Sample> {
    let p = random_equilateral(n, dim, edge, seed)?;
    let m2 = diagonal_sum(&p, 2)?.mean;
    let excess = m2 - bound;
    if dim == Dim::Three {
        return Ok(Sample {
            excess,
            chart_difference: None,
            non_strict: false,
        });
    }
    let a = vertices_to_angles(&p)?;
    let from_angles = mean_diagonal_from_angles(&a, 2)?;
    let beta = a.beta();
    let spread = beta.iter().fold(f64::NEG_INFINITY, |x, &b| x.max(b))
        - beta.iter().fold(f64::INFINITY, |x, &b| x.min(b));
    Ok(Sample {
        excess,
        chart_difference: Some((from_angles - m2).abs()),
        non_strict: spread > 1e-6 && !(excess < 0.0),
    })
}

pub fn verify_p2_global(n: usize, dim: Dim, samples: usize, seed: u64, edge: f64) -> Result<P2Report> {
    if n < 4 {
        return Err(Error::param(format!("the bound needs N >= 4, got {n}")));
    }
    let bound = 2.0 * edge * (PI / n as f64).cos();
    let regular = diagonal_sum(&regular_polygon(n, edge, dim)?, 2)?.mean;
    let rows: Vec<Sample> = (0..samples)
        .into_par_iter()
        .map(|i| sample(n, dim, edge, bound, seeds::derive(seed, i as u64)))
        .collect::<Result<_>>()?;
    let tol = P2_BOUND_TOL * edge;
    let violations = rows.iter().filter(|s| s.excess > tol).count();
    let max_excess = rows.iter().map(|s| s.excess).fold(f64::NEG_INFINITY, f64::max);
    let non_strict = rows.iter().filter(|s| s.non_strict).count();
    let exploratory = dim == Dim::Three;
    let max_chart_difference = (!exploratory).then(|| {
        rows.iter()
            .filter_map(|s| s.chart_difference)
            .fold(0.0, f64::max)
    });
    let passed = (!exploratory).then(|| {
        violations == 0
            && non_strict == 0
            && max_chart_difference.unwrap_or(0.0) <= P2_CHART_TOL * edge
            && (regular - bound).abs() <= tol
    });
    Ok(P2Report {
        n,
        d: dim.get(),
        edge,
        samples,
        seed,
        bound,
        regular_excess: regular - bound,
        violations,
        max_excess,
        non_strict,
        max_chart_difference,
        exploratory,
        passed,
    })
}
