use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::VertexPolygon;
use crate::{Error, Result};

/// Sum and mean of the `m`-diagonal lengths of a polygon, next to the
/// regular-polygon value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub m: usize,
    /// Number of distinct `m`-diagonals, `ν_m`.
    pub count: usize,
    /// `D_m`.
    pub total: f64,
    /// `M_m = D_m / ν_m`.
    pub mean: f64,
    /// `D̃_m` of the regular polygon with the same `N` and `ℓ`.
    pub regular_total: f64,
    /// `D̃_m − D_m`.
    pub gap: f64,
}

/// `ν_m`: `N` for `m < N/2`, `N/2` for `m = N/2`.
pub fn diagonal_count(n: usize, m: usize) -> Result<usize> {
    if m < 1 || m > n / 2 {
        return Err(Error::param(format!("m = {m} outside 1..={} for N = {n}", n / 2)));
    }
    Ok(if 2 * m == n { n / 2 } else { n })
}

/// `Υ_m = sin(πm/N) / sin(π/N)`, the regular `m`-chord in units of `ℓ`.
pub fn upsilon(n: usize, m: usize) -> Result<f64> {
    if n < 3 || m < 1 || m > n / 2 {
        return Err(Error::param(format!("m = {m} outside 1..={} for N = {n}", n / 2)));
    }
    let n = n as f64;
    Ok((PI * m as f64 / n).sin() / (PI / n).sin())
}

/// Length of an `m`-chord of the regular `N`-gon with edge `ℓ`.
pub fn chord_regular(n: usize, m: usize, edge: f64) -> Result<f64> {
    Ok(edge * upsilon(n, m)?)
}

/// `D_m` over the distinct pairs `{i, i+m}`; valid for `2 ≤ m ≤ ⌊N/2⌋`.
pub fn diagonal_sum(p: &VertexPolygon, m: usize) -> Result<DiagonalReport> {
    let n = p.n();
    if m < 2 || m > n / 2 {
        return Err(Error::param(format!(
            "diagonal order m = {m} outside 2..={} for N = {n}",
            n / 2
        )));
    }
    let count = diagonal_count(n, m)?;
    let total: f64 = (0..count).map(|i| p.distance(i, i + m)).sum();
    let regular_total = count as f64 * chord_regular(n, m, p.edge())?;
    Ok(DiagonalReport {
        m,
        count,
        total,
        mean: total / count as f64,
        regular_total,
        gap: regular_total - total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{regular_polygon, Dim};

    #[test]
    fn square_diagonals() {
        let sq = regular_polygon(4, 1.0, Dim::Two).unwrap();
        let r = diagonal_sum(&sq, 2).unwrap();
        assert_eq!(r.count, 2);
        assert!((r.total - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(r.gap.abs() < 1e-14);
    }

    #[test]
    fn hexagon_diagonals() {
        let hex = regular_polygon(6, 1.0, Dim::Two).unwrap();
        let r2 = diagonal_sum(&hex, 2).unwrap();
        assert_eq!(r2.count, 6);
        assert!((r2.total - 6.0 * 3f64.sqrt()).abs() < 1e-13);
        let r3 = diagonal_sum(&hex, 3).unwrap();
        assert_eq!(r3.count, 3);
        assert!((r3.total - 6.0).abs() < 1e-13);
    }

    #[test]
    fn chords() {
        assert!((chord_regular(6, 2, 1.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert!((chord_regular(4, 2, 1.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!((chord_regular(8, 3, 1.0).unwrap() - 2.414_213_562_373_095).abs() < 1e-12);
        assert_eq!(chord_regular(9, 1, 2.0).unwrap(), 2.0);
        assert!(chord_regular(8, 5, 1.0).is_err());
        assert!(chord_regular(8, 0, 1.0).is_err());
    }

    #[test]
    fn order_out_of_range() {
        let p = regular_polygon(7, 1.0, Dim::Two).unwrap();
        assert!(diagonal_sum(&p, 1).is_err());
        assert!(diagonal_sum(&p, 4).is_err());
        assert!(diagonal_sum(&p, 3).is_ok());
    }

    #[test]
    fn counts_match_enumeration() {
        // Every unordered pair {i, j}, i ≠ j, has a cyclic distance in
        // 1..=⌊N/2⌋; the per-distance tallies are ν_m.
        for n in 3..=30 {
            let mut tally = vec![0usize; n / 2 + 1];
            for i in 0..n {
                for j in i + 1..n {
                    let k = j - i;
                    tally[k.min(n - k)] += 1;
                }
            }
            for (m, &count) in tally.iter().enumerate().skip(1) {
                assert_eq!(diagonal_count(n, m).unwrap(), count, "N={n} m={m}");
            }
            let total: usize = (1..=n / 2).map(|m| diagonal_count(n, m).unwrap()).sum();
            assert_eq!(total, n * (n - 1) / 2);
        }
    }

    #[test]
    fn chord_consistency() {
        for n in 4..=100 {
            let p = regular_polygon(n, 0.7, Dim::Two).unwrap();
            for m in 2..=n / 2 {
                let r = diagonal_sum(&p, m).unwrap();
                let expect = chord_regular(n, m, 0.7).unwrap() * r.count as f64;
                assert!((r.total - expect).abs() <= 1e-10 * expect, "N={n} m={m}");
            }
        }
    }
}
