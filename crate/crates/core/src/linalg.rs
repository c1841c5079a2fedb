//! Small dense linear algebra over [`Real`] scalars: Cholesky, LU with partial
//! pivoting and Householder QR. Sizes here stay in the hundreds, so plain
//! row-major storage is enough.

use crate::error::{Error, Result};
use crate::real::Real;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from its rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs().to_f64());
            }
        }
        worst
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L L^T`.
#[derive(Clone, Debug)]
pub struct Cholesky<T> {
    l: Matrix<T>,
}

impl<T: Real> Cholesky<T> {
    /// Factors a symmetric matrix, reading only its lower triangle.
    pub fn factor(a: &Matrix<T>) -> Result<Self> {
        let n = a.rows();
        assert_eq!(n, a.cols(), "Cholesky needs a square matrix");
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > T::zero()) {
                return Err(Error::NotPositiveDefinite {
                    index: j,
                    pivot: d.to_f64(),
                });
            }
            let ljj = d.sqrt();
            l[(j, j)] = ljj;
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / ljj;
            }
        }
        Ok(Self { l })
    }

    pub fn lower(&self) -> &Matrix<T> {
        &self.l
    }

    pub fn log_det(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.l.rows() {
            acc += self.l[(i, i)].ln();
        }
        acc + acc
    }

    /// Solves `L y = b`.
    pub fn forward(&self, b: &[T]) -> Vec<T> {
        forward_lower(&self.l, b)
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let y = self.forward(b);
        let n = y.len();
        let mut x = y;
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self.l[(k, i)] * x[k];
            }
            x[i] = s / self.l[(i, i)];
        }
        x
    }
}

/// Solves `L y = b` for lower-triangular `L`.
pub fn forward_lower<T: Real>(l: &Matrix<T>, b: &[T]) -> Vec<T> {
    let n = l.rows();
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y.push(s / l[(i, i)]);
    }
    y
}

/// `ln det` of a symmetric positive definite matrix via Cholesky, `2 sum ln l_ii`.
pub fn logdet_sym<T: Real>(a: &Matrix<T>) -> Result<T> {
    Ok(Cholesky::factor(a)?.log_det())
}

/// `ln |det A|` and the sign of `det A` from LU with partial pivoting.
pub fn lu_log_abs_det<T: Real>(a: &Matrix<T>) -> (T, i32) {
    let n = a.rows();
    assert_eq!(n, a.cols(), "LU needs a square matrix");
    let mut m = a.clone();
    let mut sign = 1;
    let mut acc = T::zero();
    for k in 0..n {
        let mut p = k;
        let mut best = m[(k, k)].abs();
        for i in k + 1..n {
            let v = m[(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if !(best > T::zero()) {
            return (T::from_f64(f64::NEG_INFINITY), 0);
        }
        if p != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = t;
            }
            sign = -sign;
        }
        let pivot = m[(k, k)];
        if pivot < T::zero() {
            sign = -sign;
        }
        acc += pivot.abs().ln();
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            if f.to_f64() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let t = m[(k, j)];
                m[(i, j)] -= f * t;
            }
        }
    }
    (acc, sign)
}

/// Upper-triangular factor `R` of a Householder QR of a tall matrix
/// (`rows >= cols`), normalized so the diagonal is non-negative. For a
/// weighted sample matrix `B`, `R^T R = B^T B` without ever forming the
/// product, which keeps small singular values accurate.
pub fn qr_r<T: Real>(b: &Matrix<T>) -> Matrix<T> {
    let (m, n) = (b.rows(), b.cols());
    assert!(m >= n, "QR needs rows >= cols");
    let mut a = b.clone();
    for k in 0..n {
        let mut norm2 = T::zero();
        for i in k..m {
            norm2 += a[(i, k)] * a[(i, k)];
        }
        let norm = norm2.sqrt();
        if norm.to_f64() == 0.0 {
            continue;
        }
        let alpha = if a[(k, k)] > T::zero() { -norm } else { norm };
        // v = x - alpha e1, stored in place of column k
        a[(k, k)] = a[(k, k)] - alpha;
        let mut vnorm2 = T::zero();
        for i in k..m {
            vnorm2 += a[(i, k)] * a[(i, k)];
        }
        for j in k + 1..n {
            let mut dot = T::zero();
            for i in k..m {
                dot += a[(i, k)] * a[(i, j)];
            }
            let f = (dot + dot) / vnorm2;
            for i in k..m {
                let vi = a[(i, k)];
                a[(i, j)] -= f * vi;
            }
        }
        a[(k, k)] = alpha;
    }
    let mut r = Matrix::zeros(n, n);
    for i in 0..n {
        let flip = a[(i, i)] < T::zero();
        for j in i..n {
            r[(i, j)] = if flip { -a[(i, j)] } else { a[(i, j)] };
        }
    }
    r
}
