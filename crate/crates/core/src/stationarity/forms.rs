//! The reduced quadratic form
//! `S_m[ξ] = Σ_j { (ξ_j − ξ_{j+m})² − σ_m (ξ_j − ξ_{j+1})² }` on scalar `N`-vectors
//! and its Fourier diagonalization.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use super::lagrangian::sigma_m;
use crate::Result;

/// `S_m[ξ]` for a scalar `N`-vector.
pub fn s_form(xi: &[f64], m: usize) -> Result<f64> {
    let n = xi.len();
    let sigma = sigma_m(n, m)?;
    Ok((0..n)
        .map(|j| {
            let a = xi[j] - xi[(j + m) % n];
            let b = xi[j] - xi[(j + 1) % n];
            a * a - sigma * b * b
        })
        .sum())
}

/// Symmetric matrix `A` with `ξᵀ A ξ = S_m[ξ]`.
pub fn s_form_matrix(n: usize, m: usize) -> Result<DMatrix<f64>> {
    let sigma = sigma_m(n, m)?;
    let mut a = DMatrix::zeros(n, n);
    for j in 0..n {
        for (k, w) in [((j + m) % n, 1.0), ((j + 1) % n, -sigma)] {
            a[(j, j)] += w;
            a[(k, k)] += w;
            a[(j, k)] -= w;
            a[(k, j)] -= w;
        }
    }
    Ok(a)
}

/// `4{sin²(πmr/N) − σ_m sin²(πr/N)}`, the eigenvalue of `S_m` on the
/// Fourier mode `μ_r = 2πr/N`.
pub fn s_eigenvalue(n: usize, m: usize, r: usize) -> Result<f64> {
    let sigma = sigma_m(n, m)?;
    let x = PI * r as f64 / n as f64;
    Ok(4.0 * ((m as f64 * x).sin().powi(2) - sigma * x.sin().powi(2)))
}

/// One Fourier mode of `S_m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mode {
    pub r: usize,
    pub eigenvalue: f64,
    /// 1 for `r = 0` and `r = N/2`, otherwise 2 (the sine and cosine pair).
    pub multiplicity: usize,
}

/// Analytic spectrum of `S_m` over `r = 0..=⌊N/2⌋`.
pub fn s_form_spectrum(n: usize, m: usize) -> Result<Vec<Mode>> {
    (0..=n / 2)
        .map(|r| {
            Ok(Mode {
                r,
                eigenvalue: s_eigenvalue(n, m, r)?,
                multiplicity: if r == 0 || 2 * r == n { 1 } else { 2 },
            })
        })
        .collect()
}

/// Spectrum of [`s_form_spectrum`] expanded by multiplicity and sorted.
pub fn s_form_eigenvalues(n: usize, m: usize) -> Result<Vec<f64>> {
    let mut v: Vec<f64> = s_form_spectrum(n, m)?
        .into_iter()
        .flat_map(|mode| std::iter::repeat_n(mode.eigenvalue, mode.multiplicity))
        .collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symmetric_eigen;

    fn mode(n: usize, r: usize) -> Vec<f64> {
        (0..n)
            .map(|j| (2.0 * PI * (r * j) as f64 / n as f64).cos())
            .collect()
    }

    #[test]
    fn constant_and_first_mode_vanish() {
        for n in 4..20 {
            for m in 2..=n / 2 {
                assert!(s_form(&vec![0.7; n], m).unwrap().abs() < 1e-12);
                assert!(s_form(&mode(n, 1), m).unwrap().abs() < 1e-12);
                assert!(s_eigenvalue(n, m, 1).unwrap().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn second_mode_octagon() {
        let got = s_form(&mode(8, 2), 4).unwrap();
        let want = 8.0 / 2.0 * s_eigenvalue(8, 4, 2).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((s_eigenvalue(8, 4, 2).unwrap() + 4.0 * 3.414_213_562_373_095).abs() < 1e-12);
    }

    #[test]
    fn twelve_gon_example() {
        let v = s_eigenvalue(12, 3, 2).unwrap();
        let sigma = sigma_m(12, 3).unwrap();
        assert!((v - 4.0 * (1.0 - 0.25 * sigma)).abs() < 1e-13);
        assert!((0.25 * sigma - 1.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn spectrum_matches_dense() {
        for n in [4, 5, 9, 16, 31] {
            for m in 2..=n / 2 {
                let (dense, _) = symmetric_eigen(&s_form_matrix(n, m).unwrap()).unwrap();
                let analytic = s_form_eigenvalues(n, m).unwrap();
                assert_eq!(dense.len(), analytic.len());
                for (a, b) in dense.iter().zip(&analytic) {
                    assert!((a - b).abs() < 1e-10, "N={n} m={m}: {a} vs {b}");
                }
            }
        }
    }
}
