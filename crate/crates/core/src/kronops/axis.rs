//! Kernels that apply a 1D linear map along one axis of a tensor array.
//!
//! Arrays are stored with axis 0 fastest. Along axis `a > 0` the data is a
//! sequence of `[outer][m][inner]` blocks; each row of the operator then acts
//! on whole contiguous `inner`-length slabs, so no transposes are needed.

use crate::assembly1d::BandedMatrix;

/// A matrix whose rows each have one contiguous range of stored entries.
pub trait LineOperator {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// First stored column of row `i` and the stored entries.
    fn row(&self, i: usize) -> (usize, &[f64]);
}

impl LineOperator for BandedMatrix {
    fn nrows(&self) -> usize {
        self.dim()
    }
    fn ncols(&self) -> usize {
        self.dim()
    }
    fn row(&self, i: usize) -> (usize, &[f64]) {
        BandedMatrix::row(self, i)
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLines {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl DenseLines {
    pub fn from_fn(nrows: usize, ncols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Self { nrows, ncols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ncols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i))
    }
}

impl LineOperator for DenseLines {
    fn nrows(&self) -> usize {
        self.nrows
    }
    fn ncols(&self) -> usize {
        self.ncols
    }
    fn row(&self, i: usize) -> (usize, &[f64]) {
        (0, &self.data[i * self.ncols..(i + 1) * self.ncols])
    }
}

/// Rectangular matrix with a variable-length contiguous range per row.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseLines {
    ncols: usize,
    starts: Vec<usize>,
    offsets: Vec<usize>,
    values: Vec<f64>,
}

impl SparseLines {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            starts: Vec::new(),
            offsets: vec![0],
            values: Vec::new(),
        }
    }

    /// Appends a row whose entries start at column `start`.
    pub fn push_row(&mut self, start: usize, values: &[f64]) {
        assert!(start + values.len() <= self.ncols, "row exceeds column count");
        self.starts.push(start);
        self.values.extend_from_slice(values);
        self.offsets.push(self.values.len());
    }

    /// Transpose; assumes each column's nonzero rows are contiguous, which holds
    /// for sampled B-spline bases. Gaps are stored as explicit zeros.
    pub fn transpose(&self) -> SparseLines {
        let nrows = self.starts.len();
        let mut lo = vec![usize::MAX; self.ncols];
        let mut hi = vec![0usize; self.ncols];
        for i in 0..nrows {
            let (s, vals) = self.row(i);
            for c in s..s + vals.len() {
                lo[c] = lo[c].min(i);
                hi[c] = hi[c].max(i + 1);
            }
        }
        let mut out = SparseLines::new(nrows);
        for c in 0..self.ncols {
            if lo[c] == usize::MAX {
                out.push_row(0, &[]);
                continue;
            }
            let mut vals = vec![0.0; hi[c] - lo[c]];
            for (r, v) in (lo[c]..hi[c]).zip(vals.iter_mut()) {
                let (s, row) = self.row(r);
                if c >= s && c < s + row.len() {
                    *v = row[c - s];
                }
            }
            out.push_row(lo[c], &vals);
        }
        out
    }

    /// Scales row `i` by `w[i]`.
    pub fn scale_rows(&mut self, w: &[f64]) {
        assert_eq!(w.len(), self.starts.len());
        for (i, &wi) in w.iter().enumerate() {
            for v in &mut self.values[self.offsets[i]..self.offsets[i + 1]] {
                *v *= wi;
            }
        }
    }
}

impl LineOperator for SparseLines {
    fn nrows(&self) -> usize {
        self.starts.len()
    }
    fn ncols(&self) -> usize {
        self.ncols
    }
    fn row(&self, i: usize) -> (usize, &[f64]) {
        (self.starts[i], &self.values[self.offsets[i]..self.offsets[i + 1]])
    }
}

/// Applies `op` along `axis` of the array with shape `dims`, overwriting `output`.
///
/// `output` has the same shape with `dims[axis]` replaced by `op.nrows()`.
pub fn apply_along_axis<Op: LineOperator + ?Sized>(
    op: &Op,
    dims: &[usize],
    axis: usize,
    input: &[f64],
    output: &mut [f64],
) {
    let m_in = dims[axis];
    assert_eq!(op.ncols(), m_in, "operator width does not match axis {axis}");
    let inner: usize = dims[..axis].iter().product();
    let outer: usize = dims[axis + 1..].iter().product();
    let m_out = op.nrows();
    assert_eq!(input.len(), inner * m_in * outer);
    assert_eq!(output.len(), inner * m_out * outer);
    let rows: Vec<(usize, &[f64])> = (0..m_out).map(|i| op.row(i)).collect();

    if inner == 1 {
        for (src, dst) in input.chunks_exact(m_in).zip(output.chunks_exact_mut(m_out)) {
            for (d, &(lo, vals)) in dst.iter_mut().zip(&rows) {
                *d = vals.iter().zip(&src[lo..lo + vals.len()]).map(|(a, b)| a * b).sum();
            }
        }
        return;
    }

    for (src, dst) in input
        .chunks_exact(m_in * inner)
        .zip(output.chunks_exact_mut(m_out * inner))
    {
        for (slab, &(lo, vals)) in dst.chunks_exact_mut(inner).zip(&rows) {
            slab.fill(0.0);
            for (k, &c) in vals.iter().enumerate() {
                let from = (lo + k) * inner;
                for (o, &v) in slab.iter_mut().zip(&src[from..from + inner]) {
                    *o += c * v;
                }
            }
        }
    }
}

/// Applies one operator per axis (tensor product), allocating intermediates.
/// Returns the output shape and data.
pub fn apply_tensor_product(
    ops: &[&dyn LineOperator],
    dims: &[usize],
    input: &[f64],
) -> (Vec<usize>, Vec<f64>) {
    assert_eq!(ops.len(), dims.len());
    let mut shape = dims.to_vec();
    let mut cur = input.to_vec();
    for (axis, op) in ops.iter().enumerate() {
        let total: usize = shape.iter().product::<usize>() / shape[axis] * op.nrows();
        let mut next = vec![0.0; total];
        apply_along_axis(*op, &shape, axis, &cur, &mut next);
        shape[axis] = op.nrows();
        cur = next;
    }
    (shape, cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_along_axis(op: &DenseLines, dims: &[usize], axis: usize, input: &[f64]) -> Vec<f64> {
        let mut out_dims = dims.to_vec();
        out_dims[axis] = op.nrows();
        let total: usize = out_dims.iter().product();
        let mut out = vec![0.0; total];
        let strides_in: Vec<usize> = (0..dims.len()).map(|a| dims[..a].iter().product()).collect();
        let strides_out: Vec<usize> = (0..dims.len()).map(|a| out_dims[..a].iter().product()).collect();
        for (flat, o) in out.iter_mut().enumerate() {
            let idx: Vec<usize> = (0..dims.len()).map(|a| flat / strides_out[a] % out_dims[a]).collect();
            for j in 0..dims[axis] {
                let mut src = 0;
                for a in 0..dims.len() {
                    let ia = if a == axis { j } else { idx[a] };
                    src += ia * strides_in[a];
                }
                *o += op.get(idx[axis], j) * input[src];
            }
        }
        out
    }

    #[test]
    fn every_axis_matches_index_loop() {
        let dims = [3, 4, 2];
        let n: usize = dims.iter().product();
        let input: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
        for axis in 0..3 {
            let op = DenseLines::from_fn(5, dims[axis], |i, j| (i * 7 + j * 3) as f64 * 0.1 - 1.0);
            let mut out = vec![0.0; n / dims[axis] * 5];
            apply_along_axis(&op, &dims, axis, &input, &mut out);
            let expect = dense_along_axis(&op, &dims, axis, &input);
            for (a, b) in out.iter().zip(&expect) {
                assert!((a - b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn sparse_transpose_round_trip() {
        let mut s = SparseLines::new(4);
        s.push_row(0, &[1.0, 2.0]);
        s.push_row(1, &[3.0, 4.0, 5.0]);
        s.push_row(3, &[6.0]);
        let t = s.transpose();
        assert_eq!(t.nrows(), 4);
        assert_eq!(t.row(1), (0, &[2.0, 3.0][..]));
        assert_eq!(t.row(3), (1, &[5.0, 6.0][..]));
        let tt = t.transpose();
        for i in 0..3 {
            let (a, va) = s.row(i);
            let (b, vb) = tt.row(i);
            assert_eq!(a, b);
            assert_eq!(va, vb);
        }
    }
}
