//! Small dense linear algebra: complex determinants and real least squares.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::Complex;

/// Determinant of a square row-major matrix by Gaussian elimination with
/// partial pivoting.
pub(crate) fn det(mut a: Vec<Complex>, n: usize) -> Complex {
    debug_assert_eq!(a.len(), n * n);
    let mut det = Complex::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm()))
            .unwrap_or(col);
        if a[pivot * n + col].norm() == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for row in col + 1..n {
            let factor = a[row * n + col] / p;
            for k in col..n {
                let v = a[col * n + k];
                a[row * n + k] -= factor * v;
            }
        }
    }
    det
}

/// Least-squares solution of a column-scaled system via Householder QR.
pub(crate) struct LeastSquares {
    pub solution: Vec<f64>,
    /// Ratio of the largest to smallest `|R_ii|` after column equilibration.
    pub condition: f64,
}

/// Solves `min ||A x - y||₂` for a row-major `rows × cols` matrix.
pub(crate) fn least_squares(a: &[f64], y: &[f64], rows: usize, cols: usize) -> LeastSquares {
    assert!(rows >= cols && a.len() == rows * cols && y.len() == rows);
    let mut m = a.to_vec();
    let mut rhs = y.to_vec();

    // column equilibration
    let mut scale = vec![1.0; cols];
    for (j, s) in scale.iter_mut().enumerate() {
        let norm = (0..rows).map(|i| m[i * cols + j].powi(2)).sum::<f64>().sqrt();
        if norm > 0.0 {
            *s = norm;
            for i in 0..rows {
                m[i * cols + j] /= norm;
            }
        }
    }

    for k in 0..cols {
        let norm = (k..rows).map(|i| m[i * cols + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if m[k * cols + k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..rows).map(|i| m[i * cols + k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..cols {
            let dot: f64 = (k..rows).map(|i| v[i - k] * m[i * cols + j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..rows {
                m[i * cols + j] -= f * v[i - k];
            }
        }
        let dot: f64 = (k..rows).map(|i| v[i - k] * rhs[i]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in k..rows {
            rhs[i] -= f * v[i - k];
        }
    }

    let mut x = vec![0.0; cols];
    for k in (0..cols).rev() {
        let mut acc = rhs[k];
        for j in k + 1..cols {
            acc -= m[k * cols + j] * x[j];
        }
        let r = m[k * cols + k];
        x[k] = if r == 0.0 { 0.0 } else { acc / r };
    }
    let diag: Vec<f64> = (0..cols).map(|k| m[k * cols + k].abs()).collect();
    let max = diag.iter().cloned().fold(0.0, f64::max);
    let min = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    for (xj, s) in x.iter_mut().zip(&scale) {
        *xj /= s;
    }
    LeastSquares {
        solution: x,
        condition: if min > 0.0 { max / min } else { f64::INFINITY },
    }
}
