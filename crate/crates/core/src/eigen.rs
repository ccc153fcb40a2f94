//! Dense symmetric eigensolver.
//!
//! nalgebra's `SymmetricEigen` can stop before convergence on matrices with
//! large degenerate clusters, such as magnetization sectors of spin rings, and
//! leave residuals of order one. faer's divide-and-conquer solver is used
//! instead, with nalgebra types at the interface.

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};

fn to_faer(m: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigenvalues of a symmetric matrix in ascending order. Only the lower
/// triangle is read.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut values = to_faer(m).selfadjoint_eigenvalues(Side::Lower);
    values.sort_by(f64::total_cmp);
    values
}

/// Eigenvalues in ascending order and the matching orthonormal eigenvectors
/// as columns. Only the lower triangle is read.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    assert!(m.is_square(), "eigenvectors need a square matrix");
    let n = m.nrows();
    if n == 0 {
        return (DVector::zeros(0), DMatrix::zeros(0, 0));
    }
    let eig = to_faer(m).selfadjoint_eigendecomposition(Side::Lower);
    let (s, u) = (eig.s(), eig.u());
    let values = DVector::from_fn(n, |i, _| s.column_vector().read(i));
    let vectors = DMatrix::from_fn(n, n, |i, j| u.read(i, j));
    (values, vectors)
}
