//! Finite-`N` sweeps of the mode inequality
//! `4{sin²(πmr/N) − σ_m sin²(πr/N)} < 0` and its Chebyshev form
//! `U_{m−1}(cos π/N) > |U_{m−1}(cos πr/N)|`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::forms::s_eigenvalue;
use crate::{Error, Result};

/// Chebyshev polynomial of the second kind `U_n(x)` by the three-term
/// recurrence.
pub fn chebyshev_u(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Verdict for one `(N, m, r)` triple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    /// `4{sin²(πmr/N) − σ_m sin²(πr/N)}`.
    pub value: f64,
    pub chebyshev_lhs: f64,
    pub chebyshev_rhs: f64,
    pub sine_negative: bool,
    pub chebyshev_holds: bool,
    /// Whether `r` lies in the narrower range `2..m−1`.
    pub in_stated_range: bool,
}

impl SweepRow {
    pub fn consistent(&self) -> bool {
        self.sine_negative == self.chebyshev_holds
    }
}

/// Summary of [`inequality_sweep`].
#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub n_max: usize,
    pub triples: usize,
    /// Triples where the strict sine inequality fails.
    pub violations: Vec<SweepRow>,
    /// Triples where the two forms disagree.
    pub inconsistent: Vec<SweepRow>,
    /// Largest (least negative) value over all required triples.
    pub max_value: f64,
    /// `max |value|` over the `r = 1` modes.
    pub r1_max_abs: f64,
    /// Required triples whose `r` lies outside `2..m−1`.
    pub outside_stated_range: usize,
    pub passed: bool,
}

/// Evaluates one triple.
pub fn sweep_row(n: usize, m: usize, r: usize) -> Result<SweepRow> {
    let value = s_eigenvalue(n, m, r)?;
    let lhs = chebyshev_u(m - 1, (PI / n as f64).cos());
    let rhs = chebyshev_u(m - 1, (PI * r as f64 / n as f64).cos()).abs();
    Ok(SweepRow {
        n,
        m,
        r,
        value,
        chebyshev_lhs: lhs,
        chebyshev_rhs: rhs,
        sine_negative: value < 0.0,
        chebyshev_holds: lhs > rhs,
        in_stated_range: r >= 2 && r < m,
    })
}

/// All rows for one `N`: `m = 2..=⌊N/2⌋`, `r = 2..=N−2`.
pub fn sweep_rows(n: usize) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for m in 2..=n / 2 {
        for r in 2..=n - 2 {
            rows.push(sweep_row(n, m, r)?);
        }
    }
    Ok(rows)
}

/// Sweeps `N = 4..=n_max` in parallel over `N`.
pub fn inequality_sweep(n_max: usize) -> Result<SweepSummary> {
    if n_max < 4 {
        return Err(Error::param(format!("Nmax must be at least 4, got {n_max}")));
    }
    struct Partial {
        triples: usize,
        violations: Vec<SweepRow>,
        inconsistent: Vec<SweepRow>,
        max_value: f64,
        r1_max_abs: f64,
        outside: usize,
    }
    let parts: Vec<Partial> = (4..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Partial> {
            let rows = sweep_rows(n)?;
            let mut r1: f64 = 0.0;
            for m in 2..=n / 2 {
                r1 = r1.max(s_eigenvalue(n, m, 1)?.abs());
            }
            Ok(Partial {
                triples: rows.len(),
                max_value: rows.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max),
                outside: rows.iter().filter(|r| !r.in_stated_range).count(),
                violations: rows.iter().filter(|r| !r.sine_negative).cloned().collect(),
                inconsistent: rows.iter().filter(|r| !r.consistent()).cloned().collect(),
                r1_max_abs: r1,
            })
        })
        .collect::<Result<_>>()?;
    let mut summary = SweepSummary {
        n_max,
        triples: 0,
        violations: Vec::new(),
        inconsistent: Vec::new(),
        max_value: f64::NEG_INFINITY,
        r1_max_abs: 0.0,
        outside_stated_range: 0,
        passed: false,
    };
    for p in parts {
        summary.triples += p.triples;
        summary.violations.extend(p.violations);
        summary.inconsistent.extend(p.inconsistent);
        summary.max_value = summary.max_value.max(p.max_value);
        summary.r1_max_abs = summary.r1_max_abs.max(p.r1_max_abs);
        summary.outside_stated_range += p.outside;
    }
    summary.passed =
        summary.violations.is_empty() && summary.inconsistent.is_empty() && summary.r1_max_abs <= 1e-12;
    Ok(summary)
}

/// Grid scan of the two auxiliary sine inequalities used to close the
/// Chebyshev argument. Reported as data only.
#[derive(Clone, Debug, Serialize)]
pub struct ClosingScan {
    pub grid: usize,
    /// `max (sin x · sin(η²/x) − sin η)` over `η ∈ (0, π/2)`,
    /// `x ∈ [2η²/π, π/2]`; positive values mean `≥ sin η` holds somewhere.
    pub product_minus_sin: f64,
    /// `max (sin x · sin(η²/x) − sin² η)` on the same domain; the product
    /// peaks at `x = η` with value `sin² η`.
    pub product_minus_sin_squared: f64,
    /// Per `N`: `min_x (sin² x − sin(π/N) sin(N x²/π))` over `x ∈ (0, π/2)`.
    /// Equality holds at `x = π/N`, so grid minima of order `1e−16` are
    /// rounding.
    pub second: Vec<SecondMinimum>,
    /// `N` whose minimum lies below `−CLOSING_TOL`.
    pub second_negative: Vec<usize>,
}

/// Minimum of the second closing inequality for one `N`.
#[derive(Clone, Debug, Serialize)]
pub struct SecondMinimum {
    pub n: usize,
    pub min: f64,
}

/// Rounding allowance for the closing scan.
pub const CLOSING_TOL: f64 = 1e-12;

pub fn closing_inequality_scan(n_max: usize, grid: usize) -> Result<ClosingScan> {
    if n_max < 4 || grid < 2 {
        return Err(Error::param("closing scan needs Nmax ≥ 4 and grid ≥ 2"));
    }
    let half = 0.5 * PI;
    let mut first: f64 = f64::NEG_INFINITY;
    let mut first_sq: f64 = f64::NEG_INFINITY;
    for i in 1..grid {
        let eta = half * i as f64 / grid as f64;
        let lo = 2.0 * eta * eta / PI;
        for k in 0..=grid {
            let x = lo + (half - lo) * k as f64 / grid as f64;
            let prod = x.sin() * (eta * eta / x).sin();
            first = first.max(prod - eta.sin());
            first_sq = first_sq.max(prod - eta.sin().powi(2));
        }
    }
    let second: Vec<SecondMinimum> = (4..=n_max)
        .into_par_iter()
        .map(|n| {
            let s = (PI / n as f64).sin();
            let worst = (1..grid)
                .map(|k| {
                    let x = half * k as f64 / grid as f64;
                    x.sin().powi(2) - s * (n as f64 * x * x / PI).sin()
                })
                .fold(f64::INFINITY, f64::min);
            SecondMinimum { n, min: worst }
        })
        .collect();
    Ok(ClosingScan {
        grid,
        product_minus_sin: first,
        product_minus_sin_squared: first_sq,
        second_negative: second.iter().filter(|s| s.min < -CLOSING_TOL).map(|s| s.n).collect(),
        second,
    })
}
