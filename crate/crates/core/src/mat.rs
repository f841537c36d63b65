//! Dense matrices over exact scalars, monomial matrices, and Gaussian
//! elimination.
//!
//! Gamma matrices built from tensor products of 2x2 blocks are monomial
//! (one entry `+-1, +-i` per row and column), and so are all their products.
//! [`Mono`] keeps that structure explicit so products of antisymmetrized
//! gamma factors cost `O(dim)` instead of `O(dim^3)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::exact::{FieldScalar, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for k in 0..n {
            m.set(k, k, T::one());
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
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, o: &Self, c: &T) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            *a = a.add(&b.mul(c));
        }
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out: Mat<T> = Mat::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut t = T::zero();
        for k in 0..self.rows {
            t = t.add(self.at(k, k));
        }
        t
    }

    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Mat::zeros(self.rows * o.rows, self.cols * o.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.at(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..o.rows {
                    for c2 in 0..o.cols {
                        let b = o.at(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(r1 * o.rows + r2, c1 * o.cols + c2, a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = acc.add(&a.mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn flat(&self) -> &[T] {
        &self.data
    }
}

impl<T: FieldScalar> Mat<T> {
    /// Reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&k| !self.at(k, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for cc in 0..self.cols {
                    let tmp = self.at(r, cc).clone();
                    let v = self.at(pr, cc).clone();
                    self.set(r, cc, v);
                    self.set(pr, cc, tmp);
                }
            }
            let inv = self.at(r, c).inv();
            for cc in 0..self.cols {
                let v = self.at(r, cc).mul(&inv);
                self.set(r, cc, v);
            }
            for k in 0..self.rows {
                if k != r && !self.at(k, c).is_zero() {
                    let f = self.at(k, c).clone();
                    for cc in 0..self.cols {
                        let v = self.at(k, cc).sub(&self.at(r, cc).mul(&f));
                        self.set(k, cc, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space, as rows of the returned matrix.
    pub fn nullspace(&self) -> Mat<T> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, T::one());
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, m.at(pr, fc).neg());
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Mat<T>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, n + r, T::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &p)| p != k) {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| aug.at(r, n + c).clone()))
    }
}

/// Stack matrices vertically.
pub fn vstack<T: Scalar>(mats: &[&Mat<T>]) -> Mat<T> {
    assert!(!mats.is_empty());
    let cols = mats[0].cols;
    let rows: usize = mats.iter().map(|m| m.rows).sum();
    let mut out = Mat::zeros(rows, cols);
    let mut ro = 0;
    for m in mats {
        assert_eq!(m.cols, cols);
        for r in 0..m.rows {
            for c in 0..cols {
                out.set(ro + r, c, m.at(r, c).clone());
            }
        }
        ro += m.rows;
    }
    out
}

// ---------------------------------------------------------------------------
// Monomial matrices
// ---------------------------------------------------------------------------

/// A monomial matrix with entries in `{+-1, +-i}`: column `j` has its single
/// nonzero entry `i^ph[j]` in row `row[j]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Mono {
    pub dim: usize,
    pub row: Vec<usize>,
    pub ph: Vec<u8>,
}

impl Mono {
    pub fn identity(dim: usize) -> Self {
        Mono {
            dim,
            row: (0..dim).collect(),
            ph: vec![0; dim],
        }
    }

    /// Global phase `i^k`.
    pub fn phase(&self, k: u8) -> Self {
        Mono {
            dim: self.dim,
            row: self.row.clone(),
            ph: self.ph.iter().map(|p| (p + k) % 4).collect(),
        }
    }

    /// Matrix product `self * o`.
    pub fn mul(&self, o: &Mono) -> Mono {
        assert_eq!(self.dim, o.dim);
        let mut row = vec![0usize; self.dim];
        let mut ph = vec![0u8; self.dim];
        for j in 0..self.dim {
            let mid = o.row[j];
            row[j] = self.row[mid];
            ph[j] = (o.ph[j] + self.ph[mid]) % 4;
        }
        Mono { dim: self.dim, row, ph }
    }

    pub fn kron(&self, o: &Mono) -> Mono {
        let dim = self.dim * o.dim;
        let mut row = vec![0usize; dim];
        let mut ph = vec![0u8; dim];
        for j1 in 0..self.dim {
            for j2 in 0..o.dim {
                let j = j1 * o.dim + j2;
                row[j] = self.row[j1] * o.dim + o.row[j2];
                ph[j] = (self.ph[j1] + o.ph[j2]) % 4;
            }
        }
        Mono { dim, row, ph }
    }

    pub fn transpose(&self) -> Mono {
        let mut row = vec![0usize; self.dim];
        let mut ph = vec![0u8; self.dim];
        for j in 0..self.dim {
            row[self.row[j]] = j;
            ph[self.row[j]] = self.ph[j];
        }
        Mono { dim: self.dim, row, ph }
    }

    pub fn inverse(&self) -> Mono {
        let mut row = vec![0usize; self.dim];
        let mut ph = vec![0u8; self.dim];
        for j in 0..self.dim {
            row[self.row[j]] = j;
            ph[self.row[j]] = (4 - self.ph[j]) % 4;
        }
        Mono { dim: self.dim, row, ph }
    }

    /// `self == i^k * Id` for some k? Returns the phase.
    pub fn scalar_phase(&self) -> Option<u8> {
        let k = self.ph[0];
        for j in 0..self.dim {
            if self.row[j] != j || self.ph[j] != k {
                return None;
            }
        }
        Some(k)
    }

    pub fn to_mat<T: Scalar>(&self) -> Mat<T> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            m.set(self.row[j], j, T::one().mul_i_pow(self.ph[j]));
        }
        m
    }

    /// `acc += c * i^extra * self` on a dense matrix, `O(dim)`.
    pub fn add_into<T: Scalar>(&self, acc: &mut Mat<T>, c: &T, extra: u8) {
        for j in 0..self.dim {
            let v = acc
                .at(self.row[j], j)
                .add(&c.mul_i_pow((self.ph[j] + extra) % 4));
            acc.set(self.row[j], j, v);
        }
    }

    pub fn apply<T: Scalar>(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for j in 0..self.dim {
            if !v[j].is_zero() {
                out[self.row[j]] = v[j].mul_i_pow(self.ph[j]);
            }
        }
        out
    }

    /// Conjugation `self * m * self^-1` for dense `m`, `O(dim^2)`.
    pub fn sandwich<T: Scalar>(&self, m: &Mat<T>) -> Mat<T> {
        // (S m S^-1)[S(r), S(c)] = i^(ph[r]-ph[c]) m[r,c]
        let mut out = Mat::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let v = m.at(r, c);
                if v.is_zero() {
                    continue;
                }
                let k = (4 + self.ph[r] - self.ph[c]) % 4;
                out.set(self.row[r], self.row[c], v.mul_i_pow(k));
            }
        }
        out
    }
}
