//! Dense row-major matrices and an LU factorisation with partial pivoting.
//!
//! Products and solves skip exact zeros, so the sparse butterfly matrices used
//! by the transform cost O(n^2) per product instead of O(n^3). Summation order
//! is fixed by the loop nest; results never depend on scheduling.

use std::ops::{Index, IndexMut};

use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
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
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match {rows}x{cols}");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [T] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|v| v * s)
    }

    /// Elementwise `self + other`.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Matrix product. Zero entries of `self` are skipped.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let src = rhs.row(k);
                let dst = out.row_mut(i);
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d = *d + a * b;
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// Copies out the `h x w` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |r, c| self[(r0 + r, c0 + c)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, src: &Self) {
        for r in 0..src.rows {
            let dst = &mut self.data[(r0 + r) * self.cols + c0..(r0 + r) * self.cols + c0 + src.cols];
            dst.copy_from_slice(src.row(r));
        }
    }

    pub fn min_max(&self) -> Option<(T, T)> {
        let mut it = self.data.iter().copied();
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// `P A = L U` with unit-diagonal `L`; nonzeros of both factors kept per row.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    n: usize,
    perm: Vec<usize>,
    lower: Vec<Vec<(usize, T)>>,
    upper: Vec<Vec<(usize, T)>>,
    diag: Vec<T>,
    log_abs_det: T,
}

impl<T: Real> Lu<T> {
    /// Factorises a square matrix. Returns `None` when a pivot is exactly zero.
    pub fn factor(a: &Matrix<T>) -> Option<Self> {
        assert!(a.is_square(), "LU needs a square matrix");
        let n = a.rows();
        let mut w = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut piv = k;
            let mut best = w[(k, k)].abs();
            for r in k + 1..n {
                let v = w[(r, k)].abs();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == T::zero() {
                return None;
            }
            if piv != k {
                for c in 0..n {
                    w.data.swap(k * n + c, piv * n + c);
                }
                perm.swap(k, piv);
            }
            let p = w[(k, k)];
            for r in k + 1..n {
                let v = w[(r, k)];
                if v == T::zero() {
                    continue;
                }
                let f = v / p;
                w[(r, k)] = f;
                for c in k + 1..n {
                    let u = w[(k, c)];
                    if u != T::zero() {
                        w[(r, c)] = w[(r, c)] - f * u;
                    }
                }
            }
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        let mut diag = Vec::with_capacity(n);
        let mut log_abs_det = T::zero();
        for r in 0..n {
            for c in 0..n {
                let v = w[(r, c)];
                if v == T::zero() {
                    continue;
                }
                match c.cmp(&r) {
                    std::cmp::Ordering::Less => lower[r].push((c, v)),
                    std::cmp::Ordering::Greater => upper[r].push((c, v)),
                    std::cmp::Ordering::Equal => {}
                }
            }
            diag.push(w[(r, r)]);
            log_abs_det = log_abs_det + w[(r, r)].abs().ln();
        }
        Some(Self { n, perm, lower, upper, diag, log_abs_det })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Natural log of `|det A|`; finite even when `det A` itself would overflow.
    pub fn log_abs_det(&self) -> T {
        self.log_abs_det
    }

    /// Solves `A X = B` for all columns of `B` at once.
    pub fn solve(&self, b: &Matrix<T>) -> Matrix<T> {
        assert_eq!(b.rows(), self.n, "right-hand side has wrong row count");
        let m = b.cols();
        let mut y = Matrix::zeros(self.n, m);
        for i in 0..self.n {
            y.row_mut(i).copy_from_slice(b.row(self.perm[i]));
            for &(k, l) in &self.lower[i] {
                let (head, tail) = y.data.split_at_mut(i * m);
                let src = &head[k * m..(k + 1) * m];
                for (d, &s) in tail[..m].iter_mut().zip(src) {
                    *d = *d - l * s;
                }
            }
        }
        for i in (0..self.n).rev() {
            for &(k, u) in &self.upper[i] {
                let (head, tail) = y.data.split_at_mut(k * m);
                let dst = &mut head[i * m..(i + 1) * m];
                for (d, &s) in dst.iter_mut().zip(&tail[..m]) {
                    *d = *d - u * s;
                }
            }
            let d = self.diag[i];
            for v in y.row_mut(i) {
                *v = *v / d;
            }
        }
        y
    }
}
