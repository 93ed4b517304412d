use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Square banded matrix stored as a dense band of `2b + 1` entries per row.
///
/// Entry `(i, j)` with `|i - j| <= b` lives at `data[i * (2b + 1) + (j + b - i)]`;
/// slots that fall outside the matrix are kept at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    dim: usize,
    half_bandwidth: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(dim: usize, half_bandwidth: usize) -> Self {
        Self {
            dim,
            half_bandwidth,
            data: vec![0.0; dim * (2 * half_bandwidth + 1)],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0; dim])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self {
            dim: diag.len(),
            half_bandwidth: 0,
            data: diag.to_vec(),
        }
    }

    /// Builds from a dense row-major matrix, keeping entries within `half_bandwidth`.
    pub fn from_dense(rows: &[Vec<f64>], half_bandwidth: usize) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim, half_bandwidth);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if i.abs_diff(j) <= half_bandwidth {
                    m.set(i, j, v);
                } else if v != 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "entry ({i}, {j}) lies outside half-bandwidth {half_bandwidth}"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    fn width(&self) -> usize {
        2 * self.half_bandwidth + 1
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i.abs_diff(j) > self.half_bandwidth {
            return 0.0;
        }
        self.data[i * self.width() + j + self.half_bandwidth - i]
    }

    /// Panics if `(i, j)` is outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(i.abs_diff(j) <= self.half_bandwidth, "({i}, {j}) outside band");
        let w = self.width();
        self.data[i * w + j + self.half_bandwidth - i] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(i.abs_diff(j) <= self.half_bandwidth, "({i}, {j}) outside band");
        let w = self.width();
        self.data[i * w + j + self.half_bandwidth - i] += v;
    }

    /// Stored nonzero range of row `i`: first column and the entries.
    pub fn row(&self, i: usize) -> (usize, &[f64]) {
        let b = self.half_bandwidth;
        let lo = i.saturating_sub(b);
        let hi = (i + b + 1).min(self.dim);
        let base = i * self.width() + b - i;
        (lo, &self.data[base + lo..base + hi])
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let (lo, vals) = self.row(i);
                vals.iter().zip(&x[lo..]).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.row(i).1.iter().sum()).collect()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            let (lo, vals) = self.row(i);
            for (off, v) in vals.iter().enumerate() {
                worst = worst.max((v - self.get(lo + off, i)).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.max_asymmetry() <= tol
    }

    /// Returns `self + c * other`.
    pub fn combine(&self, c: f64, other: &BandedMatrix) -> Result<BandedMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let b = self.half_bandwidth.max(other.half_bandwidth);
        let mut out = BandedMatrix::zeros(self.dim, b);
        for i in 0..self.dim {
            let lo = i.saturating_sub(b);
            let hi = (i + b + 1).min(self.dim);
            for j in lo..hi {
                let v = self.get(i, j) + c * other.get(i, j);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: f64) -> BandedMatrix {
        BandedMatrix {
            dim: self.dim,
            half_bandwidth: self.half_bandwidth,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    /// Drops the first and last rows and columns (homogeneous Dirichlet ends).
    pub fn eliminate_boundary(&self) -> BandedMatrix {
        assert!(self.dim >= 2, "cannot eliminate both ends of a {}x{} matrix", self.dim, self.dim);
        let m = self.dim - 2;
        let b = self.half_bandwidth.min(m.saturating_sub(1));
        let mut out = BandedMatrix::zeros(m, b);
        for i in 0..m {
            let lo = i.saturating_sub(b);
            let hi = (i + b + 1).min(m);
            for j in lo..hi {
                out.set(i, j, self.get(i + 1, j + 1));
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }

    pub fn factor(&self) -> Result<BandedCholesky> {
        BandedCholesky::new(self)
    }
}

/// Lower band Cholesky factor `L` with `A = L L^T`.
///
/// Entry `(i, j)`, `i - b <= j <= i`, lives at `data[i * (b + 1) + (j + b - i)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedCholesky {
    dim: usize,
    half_bandwidth: usize,
    data: Vec<f64>,
}

impl BandedCholesky {
    /// Factors a symmetric positive-definite band matrix without pivoting;
    /// only the lower band of `a` is read. O(b^2 m).
    pub fn new(a: &BandedMatrix) -> Result<Self> {
        let m = a.dim();
        let b = a.half_bandwidth();
        let w = b + 1;
        let mut l = vec![0.0; m * w];
        for i in 0..m {
            let k0 = i.saturating_sub(b);
            for j in k0..=i {
                let mut sum = a.get(i, j);
                let kstart = k0.max(j.saturating_sub(b));
                let ri = i * w + b - i;
                let rj = j * w + b - j;
                for k in kstart..j {
                    sum -= l[ri + k] * l[rj + k];
                }
                if i == j {
                    if !(sum > 0.0) {
                        return Err(Error::NotPositiveDefinite { row: i, pivot: sum });
                    }
                    l[ri + i] = sum.sqrt();
                } else {
                    l[ri + j] = sum / l[rj + j];
                }
            }
        }
        Ok(Self {
            dim: m,
            half_bandwidth: b,
            data: l,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    #[inline]
    fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.half_bandwidth + 1) + j + self.half_bandwidth - i]
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.len(),
            });
        }
        let mut x = rhs.to_vec();
        self.solve_in_place(&mut x);
        Ok(x)
    }

    /// Solves `A x = r` overwriting `x`; O(b m).
    pub fn solve_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        let b = self.half_bandwidth;
        let w = b + 1;
        for i in 0..self.dim {
            let lo = i.saturating_sub(b);
            let row = &self.data[i * w + b - i..];
            let mut s = x[i];
            for k in lo..i {
                s -= row[k] * x[k];
            }
            x[i] = s / row[i];
        }
        for i in (0..self.dim).rev() {
            let hi = (i + b + 1).min(self.dim);
            let mut s = x[i];
            for k in i + 1..hi {
                s -= self.entry(k, i) * x[k];
            }
            x[i] = s / self.entry(i, i);
        }
    }

    /// Solves along the middle index of a `[outer][dim][inner]` array, treating
    /// each contiguous `inner`-length slab as one multi-column right-hand side.
    pub fn solve_lines(&self, data: &mut [f64], inner: usize) {
        let m = self.dim;
        assert_eq!(data.len() % (m * inner), 0);
        if inner == 1 {
            for fiber in data.chunks_exact_mut(m) {
                self.solve_in_place(fiber);
            }
            return;
        }
        let b = self.half_bandwidth;
        for block in data.chunks_exact_mut(m * inner) {
            for i in 0..m {
                let lo = i.saturating_sub(b);
                let (before, rest) = block.split_at_mut(i * inner);
                let xi = &mut rest[..inner];
                for k in lo..i {
                    let c = self.entry(i, k);
                    let xk = &before[k * inner..(k + 1) * inner];
                    for (a, &v) in xi.iter_mut().zip(xk) {
                        *a -= c * v;
                    }
                }
                let d = 1.0 / self.entry(i, i);
                xi.iter_mut().for_each(|a| *a *= d);
            }
            for i in (0..m).rev() {
                let hi = (i + b + 1).min(m);
                let (head, after) = block.split_at_mut((i + 1) * inner);
                let xi = &mut head[i * inner..];
                for k in i + 1..hi {
                    let c = self.entry(k, i);
                    let xk = &after[(k - i - 1) * inner..(k - i) * inner];
                    for (a, &v) in xi.iter_mut().zip(xk) {
                        *a -= c * v;
                    }
                }
                let d = 1.0 / self.entry(i, i);
                xi.iter_mut().for_each(|a| *a *= d);
            }
        }
    }

    /// `L L^T` as a band matrix, for checking the factorization.
    pub fn reconstruct(&self) -> BandedMatrix {
        let m = self.dim;
        let b = self.half_bandwidth;
        let mut out = BandedMatrix::zeros(m, b);
        for i in 0..m {
            for j in i.saturating_sub(b)..=i {
                let k0 = i.saturating_sub(b);
                let s: f64 = (k0..=j).map(|k| self.entry(i, k) * self.entry(j, k)).sum();
                out.set(i, j, s);
                out.set(j, i, s);
            }
        }
        out
    }
}
