//! Dense symmetric eigensolves and a few slice-vector helpers.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::{Error, Result};

const EIGEN_EPS: f64 = f64::EPSILON;
const EIGEN_MAX_ITER: usize = 10_000;

/// Smallest eigenvalue of a symmetric matrix with its eigenvector.
#[derive(Clone, Debug)]
pub struct Eigenpair {
    pub value: f64,
    /// Unit norm; sign chosen so the entry sum is non-negative.
    pub vector: DVector<f64>,
    /// `‖A v − λ v‖₂`.
    pub residual: f64,
}

/// All eigenvalues of a symmetric matrix in ascending order, with the
/// matching eigenvectors as columns.
pub fn symmetric_eigen(matrix: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    if !matrix.is_square() {
        return Err(Error::param("eigensolve of a non-square matrix"));
    }
    if matrix.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("non-finite matrix entry".into()));
    }
    let n = matrix.nrows();
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let eig = SymmetricEigen::try_new(matrix.clone(), EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::Numerical("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Smallest eigenpair of a symmetric matrix.
pub fn min_eigenpair(matrix: &DMatrix<f64>) -> Result<Eigenpair> {
    let (values, vectors) = symmetric_eigen(matrix)?;
    let value = *values
        .first()
        .ok_or_else(|| Error::param("eigensolve of an empty matrix"))?;
    let mut vector: DVector<f64> = vectors.column(0).into_owned();
    let norm = vector.norm();
    if !(norm > 0.0) {
        return Err(Error::Numerical("zero eigenvector".into()));
    }
    vector /= norm;
    if vector.sum() < 0.0 {
        vector.neg_mut();
    }
    let residual = (matrix * &vector - &vector * value).norm();
    Ok(Eigenpair {
        value,
        vector,
        residual,
    })
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
