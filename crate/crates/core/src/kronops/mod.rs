//! Kronecker-structured operators on tensor-product index grids.
//!
//! Ordering convention: a tensor field is stored with axis 0 (x) fastest,
//! and a term with factors `[F_0, F_1, ..., F_{d-1}]` equals the standard
//! dense Kronecker product `F_{d-1} ⊗ ... ⊗ F_1 ⊗ F_0`, so `F_0` acts on the
//! fastest index. [`dense_expand`] follows the same convention.

mod axis;

pub use axis::{apply_along_axis, apply_tensor_product, DenseLines, LineOperator, SparseLines};

use nalgebra::DMatrix;

use crate::assembly1d::{assemble_mass_1d, assemble_stiffness_1d, BandedCholesky, BandedMatrix};
use crate::error::{Error, Result};
use crate::splines::BasisSpec1D;

/// Largest operator [`dense_expand`] will build.
pub const DENSE_LIMIT: usize = 10_000;

/// Coefficients on a tensor-product index grid, axis 0 fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    dims: Vec<usize>,
    data: Vec<f64>,
}

impl TensorField {
    pub fn zeros(dims: &[usize]) -> Self {
        Self {
            dims: dims.to_vec(),
            data: vec![0.0; dims.iter().product()],
        }
    }

    pub fn from_vec(dims: &[usize], data: Vec<f64>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if data.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: data.len(),
            });
        }
        Ok(Self {
            dims: dims.to_vec(),
            data,
        })
    }

    /// Separable field `a ⊗ b ⊗ ...` with `factors[0]` along the fastest axis.
    pub fn outer(factors: &[&[f64]]) -> Self {
        let dims: Vec<usize> = factors.iter().map(|f| f.len()).collect();
        let mut data = vec![1.0];
        for f in factors {
            let mut next = Vec::with_capacity(data.len() * f.len());
            for &v in f.iter() {
                next.extend(data.iter().map(|&d| d * v));
            }
            // next now has the new axis slowest
            data = next;
        }
        Self { dims, data }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn dot(&self, other: &TensorField) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `self += a * x`
    pub fn axpy(&mut self, a: f64, x: &TensorField) {
        for (s, v) in self.data.iter_mut().zip(&x.data) {
            *s += a * v;
        }
    }

    pub fn sub(&self, other: &TensorField) -> TensorField {
        TensorField {
            dims: self.dims.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if self.dims != dims {
            let expected: usize = dims.iter().product();
            return Err(Error::DimensionMismatch {
                expected,
                found: self.data.len(),
            });
        }
        Ok(())
    }
}

/// Scratch buffers reused across operator applications.
#[derive(Debug, Default, Clone)]
pub struct Scratch {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl Scratch {
    fn ensure(&mut self, n: usize) {
        if self.a.len() != n {
            self.a = vec![0.0; n];
            self.b = vec![0.0; n];
        }
    }
}

/// One Kronecker product of square 1D banded factors, one per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct KronTerm {
    factors: Vec<BandedMatrix>,
}

impl KronTerm {
    pub fn new(factors: Vec<BandedMatrix>) -> Self {
        assert!(!factors.is_empty(), "a Kronecker term needs at least one factor");
        Self { factors }
    }

    pub fn factors(&self) -> &[BandedMatrix] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim()).collect()
    }

    pub fn n_dofs(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).product()
    }

    /// Sum factorization: one banded sweep per axis. `tmp` must have the same length.
    pub fn apply_into(&self, input: &[f64], out: &mut [f64], tmp: &mut [f64]) {
        let dims = self.dims();
        let d = dims.len();
        let mut src: Option<bool> = None; // None = input, Some(true) = out, Some(false) = tmp
        for (axis, f) in self.factors.iter().enumerate() {
            let to_out = (d - 1 - axis).is_multiple_of(2);
            match (src, to_out) {
                (None, true) => apply_along_axis(f, &dims, axis, input, out),
                (None, false) => apply_along_axis(f, &dims, axis, input, tmp),
                (Some(false), true) => apply_along_axis(f, &dims, axis, tmp, out),
                (Some(true), false) => apply_along_axis(f, &dims, axis, out, tmp),
                _ => unreachable!("alternating buffers"),
            }
            src = Some(to_out);
        }
    }

    pub fn apply(&self, u: &TensorField) -> Result<TensorField> {
        u.check_dims(&self.dims())?;
        let mut out = vec![0.0; u.len()];
        let mut tmp = vec![0.0; u.len()];
        self.apply_into(u.as_slice(), &mut out, &mut tmp);
        TensorField::from_vec(u.dims(), out)
    }

    pub fn factorize(&self) -> Result<FactoredKronTerm> {
        let factors = self
            .factors
            .iter()
            .map(BandedMatrix::factor)
            .collect::<Result<Vec<_>>>()?;
        Ok(FactoredKronTerm { factors })
    }
}

/// Per-axis Cholesky factors of a Kronecker term.
#[derive(Debug, Clone)]
pub struct FactoredKronTerm {
    factors: Vec<BandedCholesky>,
}

impl FactoredKronTerm {
    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim()).collect()
    }

    /// Solves `(⊗ F) x = data` in place, one banded sweep per axis; O(p^2 N).
    pub fn solve_in_place(&self, data: &mut [f64]) {
        let mut inner = 1;
        for f in &self.factors {
            f.solve_lines(data, inner);
            inner *= f.dim();
        }
    }

    pub fn solve(&self, rhs: &TensorField) -> Result<TensorField> {
        rhs.check_dims(&self.dims())?;
        let mut x = rhs.clone();
        self.solve_in_place(x.as_mut_slice());
        Ok(x)
    }
}

/// Weighted sum of Kronecker terms sharing per-axis dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct KronOperator {
    dims: Vec<usize>,
    terms: Vec<(f64, KronTerm)>,
}

impl KronOperator {
    pub fn new(dims: Vec<usize>) -> Self {
        Self {
            dims,
            terms: Vec::new(),
        }
    }

    pub fn from_term(term: KronTerm) -> Self {
        Self {
            dims: term.dims(),
            terms: vec![(1.0, term)],
        }
    }

    pub fn push(&mut self, weight: f64, term: KronTerm) -> Result<()> {
        let dims = term.dims();
        if dims != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims.iter().product(),
                found: dims.iter().product(),
            });
        }
        self.terms.push((weight, term));
        Ok(())
    }

    pub fn with(mut self, weight: f64, term: KronTerm) -> Result<Self> {
        self.push(weight, term)?;
        Ok(self)
    }

    pub fn terms(&self) -> &[(f64, KronTerm)] {
        &self.terms
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_dofs(&self) -> usize {
        self.dims.iter().product()
    }

    /// `out = Σ w_t (⊗F_t) input`.
    pub fn apply_into(&self, input: &[f64], out: &mut [f64], scratch: &mut Scratch) {
        let n = input.len();
        scratch.ensure(n);
        out.fill(0.0);
        for (w, term) in &self.terms {
            term.apply_into(input, &mut scratch.a, &mut scratch.b);
            for (o, v) in out.iter_mut().zip(&scratch.a) {
                *o += w * v;
            }
        }
    }

    pub fn apply(&self, u: &TensorField) -> Result<TensorField> {
        kron_matvec(self, u)
    }
}

/// Applies every term by sum factorization; O(p N) per term and axis.
pub fn kron_matvec(op: &KronOperator, u: &TensorField) -> Result<TensorField> {
    u.check_dims(op.dims())?;
    let mut out = vec![0.0; u.len()];
    op.apply_into(u.as_slice(), &mut out, &mut Scratch::default());
    TensorField::from_vec(u.dims(), out)
}

/// Exact solve with a single Kronecker term.
pub fn kron_solve(term: &KronTerm, rhs: &TensorField) -> Result<TensorField> {
    term.factorize()?.solve(rhs)
}

/// Explicit dense matrix of a Kronecker operator, for oracles and small reference solves.
pub fn dense_expand(op: &KronOperator) -> Result<DMatrix<f64>> {
    let n = op.n_dofs();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: DENSE_LIMIT,
        });
    }
    let mut out = DMatrix::zeros(n, n);
    for (w, term) in op.terms() {
        out += dense_term(term) * *w;
    }
    Ok(out)
}

fn dense_term(term: &KronTerm) -> DMatrix<f64> {
    let mut acc = DMatrix::from_element(1, 1, 1.0);
    for f in term.factors() {
        acc = f.to_dense().kronecker(&acc);
    }
    acc
}

/// Per-axis 1D mass and stiffness matrices of a tensor-product spline space
/// with homogeneous Dirichlet data, and the Kronecker operators built from them.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    specs: Vec<BasisSpec1D>,
    mass: Vec<BandedMatrix>,
    stiffness: Vec<BandedMatrix>,
}

impl TensorSpace {
    pub fn new(specs: Vec<BasisSpec1D>) -> Result<Self> {
        if specs.is_empty() || specs.len() > 3 {
            return Err(Error::UnsupportedDimension(specs.len()));
        }
        let mut mass = Vec::with_capacity(specs.len());
        let mut stiffness = Vec::with_capacity(specs.len());
        for s in &specs {
            if s.n_interior() == 0 {
                return Err(Error::InvalidBasis(format!(
                    "degree {} on {} element(s) leaves no interior functions",
                    s.degree(),
                    s.n_elements()
                )));
            }
            mass.push(assemble_mass_1d(s)?);
            stiffness.push(assemble_stiffness_1d(s)?);
        }
        Ok(Self {
            specs,
            mass,
            stiffness,
        })
    }

    /// Same spline space along each of `d` axes.
    pub fn isotropic(d: usize, spec: BasisSpec1D) -> Result<Self> {
        Self::new(vec![spec; d])
    }

    pub fn dim(&self) -> usize {
        self.specs.len()
    }

    pub fn specs(&self) -> &[BasisSpec1D] {
        &self.specs
    }

    pub fn mass_1d(&self) -> &[BandedMatrix] {
        &self.mass
    }

    pub fn stiffness_1d(&self) -> &[BandedMatrix] {
        &self.stiffness
    }

    pub fn dims(&self) -> Vec<usize> {
        self.mass.iter().map(|m| m.dim()).collect()
    }

    pub fn n_dofs(&self) -> usize {
        self.dims().iter().product()
    }

    /// Term with `K_ξ` on the axes in `mask` and `M_ξ` elsewhere.
    fn mixed_term(&self, mask: usize) -> KronTerm {
        KronTerm::new(
            (0..self.dim())
                .map(|a| {
                    if mask & (1 << a) != 0 {
                        self.stiffness[a].clone()
                    } else {
                        self.mass[a].clone()
                    }
                })
                .collect(),
        )
    }

    pub fn mass_term(&self) -> KronTerm {
        self.mixed_term(0)
    }

    /// `M = ⊗ M_ξ`.
    pub fn mass_operator(&self) -> KronOperator {
        KronOperator::from_term(self.mass_term())
    }

    /// `K = Σ_ξ K_ξ ⊗ (M elsewhere)`.
    pub fn stiffness_operator(&self) -> KronOperator {
        let mut op = KronOperator::new(self.dims());
        for a in 0..self.dim() {
            op.terms.push((1.0, self.mixed_term(1 << a)));
        }
        op
    }

    /// Unsplit `M + c K`.
    pub fn shifted_operator(&self, c: f64) -> KronOperator {
        let mut op = self.mass_operator();
        for a in 0..self.dim() {
            op.terms.push((c, self.mixed_term(1 << a)));
        }
        op
    }

    /// Separable `⊗ (M_ξ + c K_ξ)`.
    pub fn split_term(&self, c: f64) -> KronTerm {
        KronTerm::new(
            self.mass
                .iter()
                .zip(&self.stiffness)
                .map(|(m, k)| m.combine(c, k).expect("per-axis dims agree"))
                .collect(),
        )
    }

    /// `⊗(M_ξ + ηK_ξ) − (M + ηK)`: every expanded term with stiffness on two or
    /// more axes, weighted by `η^(number of such axes)`.
    pub fn splitting_defect(&self, eta: f64) -> KronOperator {
        let mut op = KronOperator::new(self.dims());
        for mask in 0usize..(1 << self.dim()) {
            let order = mask.count_ones() as i32;
            if order >= 2 {
                op.terms.push((eta.powi(order), self.mixed_term(mask)));
            }
        }
        op
    }
}

/// Free-function form of [`TensorSpace::splitting_defect`].
pub fn splitting_defect(space: &TensorSpace, eta: f64) -> KronOperator {
    space.splitting_defect(eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(rows: &[Vec<f64>], b: usize) -> BandedMatrix {
        BandedMatrix::from_dense(rows, b).unwrap()
    }

    #[test]
    fn identity_factors_leave_field_unchanged() {
        let term = KronTerm::new(vec![BandedMatrix::identity(3), BandedMatrix::identity(4)]);
        let u = TensorField::from_vec(&[3, 4], (0..12).map(|i| i as f64).collect()).unwrap();
        let op = KronOperator::from_term(term.clone());
        assert_eq!(kron_matvec(&op, &u).unwrap(), u);
        assert_eq!(kron_solve(&term, &u).unwrap(), u);
    }

    #[test]
    fn dense_expand_trivial_cases() {
        let eye = KronOperator::from_term(KronTerm::new(vec![
            BandedMatrix::identity(2),
            BandedMatrix::identity(2),
        ]));
        assert_eq!(dense_expand(&eye).unwrap(), DMatrix::identity(4, 4));
        let k = KronOperator::from_term(KronTerm::new(vec![
            BandedMatrix::from_diagonal(&[2.0]),
            BandedMatrix::from_diagonal(&[3.0]),
        ]));
        assert_eq!(dense_expand(&k).unwrap(), DMatrix::from_element(1, 1, 6.0));
    }

    #[test]
    fn dense_expand_guard() {
        let big = KronOperator::from_term(KronTerm::new(vec![
            BandedMatrix::identity(101),
            BandedMatrix::identity(100),
        ]));
        assert!(matches!(dense_expand(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn matvec_matches_dense_kron_3x3() {
        let fx = small(&[vec![2.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 2.0]], 1);
        let fy = small(&[vec![4.0, 1.0, 0.5], vec![1.0, 3.0, 0.25], vec![0.5, 0.25, 5.0]], 2);
        let op = KronOperator::from_term(KronTerm::new(vec![fx.clone(), fy.clone()]));
        let u = TensorField::from_vec(&[3, 3], (0..9).map(|i| (i as f64).sin()).collect()).unwrap();
        let got = kron_matvec(&op, &u).unwrap();
        // explicit kron(F_y, F_x) with x fastest
        for iy in 0..3 {
            for ix in 0..3 {
                let mut s = 0.0;
                for jy in 0..3 {
                    for jx in 0..3 {
                        s += fy.get(iy, jy) * fx.get(ix, jx) * u.as_slice()[jx + 3 * jy];
                    }
                }
                assert!((s - got.as_slice()[ix + 3 * iy]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn size_mismatch_is_error() {
        let op = KronOperator::from_term(KronTerm::new(vec![BandedMatrix::identity(3)]));
        let u = TensorField::zeros(&[4]);
        assert!(kron_matvec(&op, &u).is_err());
        let mut op2 = KronOperator::new(vec![3]);
        assert!(op2.push(1.0, KronTerm::new(vec![BandedMatrix::identity(2)])).is_err());
    }

    #[test]
    fn outer_product_layout() {
        let f = TensorField::outer(&[&[1.0, 2.0], &[10.0, 20.0, 30.0]]);
        assert_eq!(f.dims(), &[2, 3]);
        assert_eq!(f.as_slice(), &[10.0, 20.0, 20.0, 40.0, 30.0, 60.0]);
    }

    #[test]
    fn zero_eta_defect_is_zero() {
        let s = BasisSpec1D::new(2, 1, 4).unwrap();
        let space = TensorSpace::isotropic(2, s).unwrap();
        let defect = space.splitting_defect(0.0);
        let u = TensorField::from_vec(&space.dims(), vec![1.0; space.n_dofs()]).unwrap();
        assert_eq!(kron_matvec(&defect, &u).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn three_axis_defect_has_pairwise_and_triple_terms() {
        let s = BasisSpec1D::new(1, 0, 3).unwrap();
        let space = TensorSpace::isotropic(3, s).unwrap();
        let d = space.splitting_defect(0.5);
        let weights: Vec<f64> = d.terms().iter().map(|(w, _)| *w).collect();
        assert_eq!(weights, vec![0.25, 0.25, 0.25, 0.125]);
    }
}
