//! Manufactured heat problems, load vectors, initial data and error norms.
//!
//! Everything integrates on the tensor product of 1D Gauss rules, so basis
//! values are sampled once per axis and all volume integrals reduce to axis
//! sweeps with [`apply_tensor_product`].

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::kronops::{apply_tensor_product, DenseLines, LineOperator, SparseLines, TensorField, TensorSpace};
use crate::quadrature::GaussLegendre;
use crate::splines::BasisSpec1D;
use crate::timestepper::{LoadProvider, State};

/// `u_t − Δu = f` on the unit cube with homogeneous Dirichlet data.
pub trait HeatProblem: Send + Sync {
    fn dim(&self) -> usize;
    fn exact(&self, x: &[f64], t: f64) -> f64;
    /// Writes `∇u(x, t)` into `grad`.
    fn gradient(&self, x: &[f64], t: f64, grad: &mut [f64]);
    fn forcing(&self, x: &[f64], t: f64) -> f64;
    /// Whether `f` vanishes identically, letting callers skip load assembly.
    fn forcing_is_zero(&self) -> bool {
        false
    }
    fn initial(&self, x: &[f64]) -> f64 {
        self.exact(x, 0.0)
    }
    fn label(&self) -> String;
}

/// Time factor of a manufactured solution `Π sin(πx_i) · T(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ManufacturedKind {
    /// `T = e^{−dπ²t}`: a homogeneous heat solution, `f = 0`.
    Homogeneous,
    /// `T = (1 + t) e^{−dπ²t}`, giving `f = Π sin(πx_i) e^{−dπ²t}`.
    Forced,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManufacturedProblem {
    d: usize,
    kind: ManufacturedKind,
}

impl ManufacturedProblem {
    pub fn new(d: usize, kind: ManufacturedKind) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        Ok(Self { d, kind })
    }

    pub fn kind(&self) -> ManufacturedKind {
        self.kind
    }

    fn decay(&self) -> f64 {
        self.d as f64 * PI * PI
    }

    fn time_factor(&self, t: f64) -> f64 {
        let e = (-self.decay() * t).exp();
        match self.kind {
            ManufacturedKind::Homogeneous => e,
            ManufacturedKind::Forced => (1.0 + t) * e,
        }
    }

    fn sines(&self, x: &[f64]) -> f64 {
        x.iter().map(|&xi| (PI * xi).sin()).product()
    }
}

/// The product-of-sines solution in `d ∈ {2, 3}` dimensions, `f = 0`.
pub fn heat_manufactured(d: usize) -> Result<ManufacturedProblem> {
    if d != 2 && d != 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    ManufacturedProblem::new(d, ManufacturedKind::Homogeneous)
}

impl HeatProblem for ManufacturedProblem {
    fn dim(&self) -> usize {
        self.d
    }

    fn exact(&self, x: &[f64], t: f64) -> f64 {
        self.sines(x) * self.time_factor(t)
    }

    fn gradient(&self, x: &[f64], t: f64, grad: &mut [f64]) {
        let tf = self.time_factor(t);
        for (i, g) in grad.iter_mut().enumerate() {
            let mut v = PI * (PI * x[i]).cos();
            for (j, &xj) in x.iter().enumerate() {
                if j != i {
                    v *= (PI * xj).sin();
                }
            }
            *g = v * tf;
        }
    }

    fn forcing(&self, x: &[f64], t: f64) -> f64 {
        match self.kind {
            ManufacturedKind::Homogeneous => 0.0,
            ManufacturedKind::Forced => self.sines(x) * (-self.decay() * t).exp(),
        }
    }

    fn forcing_is_zero(&self) -> bool {
        self.kind == ManufacturedKind::Homogeneous
    }

    fn label(&self) -> String {
        match self.kind {
            ManufacturedKind::Homogeneous => format!("sines{}d", self.d),
            ManufacturedKind::Forced => format!("sines{}d-forced", self.d),
        }
    }
}

/// Interior basis functions of one axis sampled at the Gauss points of every element.
#[derive(Debug, Clone)]
pub struct SampledBasis1d {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    /// `values.row(q)` holds `θ_j(x_q)` for the interior functions.
    pub values: SparseLines,
    pub derivatives: SparseLines,
}

impl SampledBasis1d {
    pub fn new(spec: &BasisSpec1D, points_per_element: usize) -> Result<Self> {
        let rule = GaussLegendre::new(points_per_element);
        let n_int = spec.n_interior();
        let h = spec.element_size();
        let mut points = Vec::new();
        let mut weights = Vec::new();
        let mut values = SparseLines::new(n_int);
        let mut derivatives = SparseLines::new(n_int);
        for e in 0..spec.n_elements() {
            for (x, w) in rule.on_interval(e as f64 * h, (e + 1) as f64 * h) {
                let ev = spec.eval(x)?;
                // global index g maps to interior index g − 1
                let lo = ev.first.max(1);
                let hi = (ev.first + ev.values.len()).min(spec.n_basis() - 1);
                let (a, b) = (lo - ev.first, hi.max(lo) - ev.first);
                values.push_row(lo - 1, &ev.values[a..b]);
                derivatives.push_row(lo - 1, &ev.derivatives[a..b]);
                points.push(x);
                weights.push(w);
            }
        }
        Ok(Self {
            points,
            weights,
            values,
            derivatives,
        })
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    /// `(W B)ᵀ`: maps point samples to `∫ θ_j g dx`.
    pub fn weighted_transpose(&self) -> SparseLines {
        let mut v = self.values.clone();
        v.scale_rows(&self.weights);
        v.transpose()
    }
}

/// Samples `g` on the tensor grid of per-axis points, axis 0 fastest.
pub fn sample_on_grid(points: &[&[f64]], mut g: impl FnMut(&[f64]) -> f64) -> Vec<f64> {
    let dims: Vec<usize> = points.iter().map(|p| p.len()).collect();
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; dims.len()];
    let mut x: Vec<f64> = points.iter().map(|p| p[0]).collect();
    for _ in 0..total {
        out.push(g(&x));
        for a in 0..dims.len() {
            idx[a] += 1;
            if idx[a] < dims[a] {
                x[a] = points[a][idx[a]];
                break;
            }
            idx[a] = 0;
            x[a] = points[a][0];
        }
    }
    out
}

/// Integrates a sampled function against the tensor basis.
#[derive(Debug, Clone)]
pub struct TensorQuadrature {
    axes: Vec<SampledBasis1d>,
    integrators: Vec<SparseLines>,
}

impl TensorQuadrature {
    pub fn new(space: &TensorSpace, points_per_element: usize) -> Result<Self> {
        let axes = space
            .specs()
            .iter()
            .map(|s| SampledBasis1d::new(s, points_per_element))
            .collect::<Result<Vec<_>>>()?;
        let integrators = axes.iter().map(SampledBasis1d::weighted_transpose).collect();
        Ok(Self { axes, integrators })
    }

    /// Default rule for loads and projections: `p + 2` points per element.
    pub fn for_space(space: &TensorSpace) -> Result<Self> {
        let p = space.specs().iter().map(BasisSpec1D::degree).max().unwrap_or(1);
        Self::new(space, p + 2)
    }

    pub fn axes(&self) -> &[SampledBasis1d] {
        &self.axes
    }

    fn grid_dims(&self) -> Vec<usize> {
        self.axes.iter().map(SampledBasis1d::n_points).collect()
    }

    pub fn sample(&self, g: impl FnMut(&[f64]) -> f64) -> Vec<f64> {
        let pts: Vec<&[f64]> = self.axes.iter().map(|a| a.points.as_slice()).collect();
        sample_on_grid(&pts, g)
    }

    /// `b_j = ∫ Θ_j g dx` for samples of `g` on the quadrature grid.
    pub fn integrate_against_basis(&self, samples: &[f64]) -> Vec<f64> {
        let ops: Vec<&dyn LineOperator> = self.integrators.iter().map(|o| o as &dyn LineOperator).collect();
        apply_tensor_product(&ops, &self.grid_dims(), samples).1
    }

    /// Values of `u_h` on the grid; with `derivative_axis = Some(a)`, `∂u_h/∂x_a` instead.
    pub fn evaluate(&self, coeffs: &TensorField, derivative_axis: Option<usize>) -> Vec<f64> {
        let ops: Vec<&dyn LineOperator> = self
            .axes
            .iter()
            .enumerate()
            .map(|(a, ax)| {
                if Some(a) == derivative_axis {
                    &ax.derivatives as &dyn LineOperator
                } else {
                    &ax.values as &dyn LineOperator
                }
            })
            .collect();
        apply_tensor_product(&ops, coeffs.dims(), coeffs.as_slice()).1
    }

    /// Tensor weights on the grid.
    pub fn weights(&self) -> Vec<f64> {
        let w: Vec<&[f64]> = self.axes.iter().map(|a| a.weights.as_slice()).collect();
        TensorField::outer(&w).into_vec()
    }
}

/// `F_j(t) = ∫ Θ_j f(·, t) dx`.
pub fn load_vector(problem: &dyn HeatProblem, space: &TensorSpace, t: f64) -> Result<TensorField> {
    let q = TensorQuadrature::for_space(space)?;
    ProblemLoad::with_quadrature(problem, q).load(space, t)
}

/// Load provider for [`crate::timestepper::Stepper`] with the quadrature grid cached.
pub struct ProblemLoad<'a> {
    problem: &'a dyn HeatProblem,
    quad: TensorQuadrature,
}

impl<'a> ProblemLoad<'a> {
    pub fn new(problem: &'a dyn HeatProblem, space: &TensorSpace) -> Result<Self> {
        Ok(Self::with_quadrature(problem, TensorQuadrature::for_space(space)?))
    }

    pub fn with_quadrature(problem: &'a dyn HeatProblem, quad: TensorQuadrature) -> Self {
        Self { problem, quad }
    }

    pub fn load(&self, space: &TensorSpace, t: f64) -> Result<TensorField> {
        let mut out = vec![0.0; space.n_dofs()];
        self.add_load(t, &mut out)?;
        TensorField::from_vec(&space.dims(), out)
    }
}

impl LoadProvider for ProblemLoad<'_> {
    fn add_load(&self, t: f64, out: &mut [f64]) -> Result<()> {
        if self.problem.forcing_is_zero() {
            return Ok(());
        }
        let samples = self.quad.sample(|x| self.problem.forcing(x, t));
        let b = self.quad.integrate_against_basis(&samples);
        if b.len() != out.len() {
            return Err(Error::DimensionMismatch {
                expected: out.len(),
                found: b.len(),
            });
        }
        for (o, v) in out.iter_mut().zip(b) {
            *o += v;
        }
        Ok(())
    }

    fn is_zero(&self) -> bool {
        self.problem.forcing_is_zero()
    }
}

/// L² projection of `g` onto the space: `M c = ∫ Θ g`, solved exactly.
pub fn l2_projection(space: &TensorSpace, g: impl FnMut(&[f64]) -> f64) -> Result<TensorField> {
    let q = TensorQuadrature::for_space(space)?;
    let b = q.integrate_against_basis(&q.sample(g));
    let mut b = TensorField::from_vec(&space.dims(), b)?;
    space.mass_term().factorize()?.solve_in_place(b.as_mut_slice());
    Ok(b)
}

/// Interpolation at the Greville abscissae of the interior functions.
pub fn greville_interpolation(space: &TensorSpace, g: impl FnMut(&[f64]) -> f64) -> Result<TensorField> {
    let mut inverses = Vec::new();
    let mut points = Vec::new();
    for spec in space.specs() {
        let n = spec.n_interior();
        let gr = spec.greville();
        let pts: Vec<f64> = gr[1..=n].to_vec();
        let mut c = DMatrix::zeros(n, n);
        for (i, &x) in pts.iter().enumerate() {
            let ev = spec.eval(x)?;
            for (k, v) in ev.values.iter().enumerate() {
                let gidx = ev.first + k;
                if gidx >= 1 && gidx <= n {
                    c[(i, gidx - 1)] = *v;
                }
            }
        }
        let inv = c
            .try_inverse()
            .ok_or_else(|| Error::InvalidBasis("singular collocation matrix".into()))?;
        inverses.push(DenseLines::from_fn(n, n, |i, j| inv[(i, j)]));
        points.push(pts);
    }
    let pts: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    let samples = sample_on_grid(&pts, g);
    let ops: Vec<&dyn LineOperator> = inverses.iter().map(|o| o as &dyn LineOperator).collect();
    TensorField::from_vec(&space.dims(), apply_tensor_product(&ops, &space.dims(), &samples).1)
}

/// Gauss points per element used for error norms by default.
pub fn default_error_points(degree: usize) -> usize {
    2 * degree + 3
}

/// Final-time errors of a discrete solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub l2: f64,
    pub grad_l2: f64,
    pub h: f64,
    pub time: f64,
    pub points_per_element: usize,
}

/// Errors of `coeffs` against `u(·, t)` with `points` Gauss points per element and axis.
pub fn error_norms_at(
    problem: &dyn HeatProblem,
    space: &TensorSpace,
    coeffs: &TensorField,
    t: f64,
    points: usize,
) -> Result<ErrorReport> {
    if problem.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: problem.dim(),
        });
    }
    let q = TensorQuadrature::new(space, points)?;
    let d = space.dim();
    let axes = q.axes();
    let (lead, last) = axes.split_at(d - 1);
    let last = &last[0];
    let dims = coeffs.dims();
    let lead_dims = &dims[..d - 1];
    let slab: usize = lead_dims.iter().product();
    let lead_pts: Vec<&[f64]> = lead.iter().map(|a| a.points.as_slice()).collect();
    let lead_w: Vec<&[f64]> = lead.iter().map(|a| a.weights.as_slice()).collect();
    let lead_w = TensorField::outer(&lead_w).into_vec();
    let eval_lead = |data: &[f64], derivative_axis: Option<usize>| -> Vec<f64> {
        let ops: Vec<&dyn LineOperator> = lead
            .iter()
            .enumerate()
            .map(|(a, ax)| {
                if Some(a) == derivative_axis {
                    &ax.derivatives as &dyn LineOperator
                } else {
                    &ax.values as &dyn LineOperator
                }
            })
            .collect();
        apply_tensor_product(&ops, lead_dims, data).1
    };

    // one slab of quadrature points along the last axis at a time
    let c = coeffs.as_slice();
    let mut vals_c = vec![0.0; slab];
    let mut ders_c = vec![0.0; slab];
    let mut x = vec![0.0; d];
    let mut g = vec![0.0; d];
    let (mut l2, mut h1) = (0.0, 0.0);
    for qi in 0..last.n_points() {
        for (buf, row) in [(&mut vals_c, last.values.row(qi)), (&mut ders_c, last.derivatives.row(qi))] {
            buf.fill(0.0);
            let (lo, coef) = row;
            for (k, &cv) in coef.iter().enumerate() {
                let src = &c[(lo + k) * slab..(lo + k + 1) * slab];
                for (b, s) in buf.iter_mut().zip(src) {
                    *b += cv * s;
                }
            }
        }
        x[d - 1] = last.points[qi];
        let mut grad_exact = vec![Vec::with_capacity(lead_w.len()); d];
        let exact = sample_on_grid(&lead_pts, |xs| {
            x[..d - 1].copy_from_slice(xs);
            problem.gradient(&x, t, &mut g);
            for (col, v) in grad_exact.iter_mut().zip(&g) {
                col.push(*v);
            }
            problem.exact(&x, t)
        });
        let wl = last.weights[qi];
        let sq = |approx: &[f64], reference: &[f64]| -> f64 {
            lead_w
                .iter()
                .zip(approx.iter().zip(reference))
                .map(|(w, (a, b))| w * (a - b).powi(2))
                .sum::<f64>()
                * wl
        };
        l2 += sq(&eval_lead(&vals_c, None), &exact);
        for (a, ge) in grad_exact.iter().enumerate() {
            let dh = if a == d - 1 {
                eval_lead(&ders_c, None)
            } else {
                eval_lead(&vals_c, Some(a))
            };
            h1 += sq(&dh, ge);
        }
    }
    let h = space
        .specs()
        .iter()
        .map(BasisSpec1D::element_size)
        .fold(0.0, f64::max);
    Ok(ErrorReport {
        l2: l2.sqrt(),
        grad_l2: h1.sqrt(),
        h,
        time: t,
        points_per_element: points,
    })
}

/// Errors of `state` at the expected final time `t_final`; `2p + 3` points per
/// element unless overridden, at least `p + 2`.
pub fn error_norms(
    state: &State,
    problem: &dyn HeatProblem,
    space: &TensorSpace,
    t_final: f64,
    points: Option<usize>,
) -> Result<ErrorReport> {
    if (state.t - t_final).abs() > 1e-9 * t_final.abs().max(1.0) {
        return Err(Error::InvalidParams(format!(
            "state is at t = {}, expected t = {t_final}",
            state.t
        )));
    }
    let p = space.specs().iter().map(BasisSpec1D::degree).max().unwrap_or(1);
    let points = points.unwrap_or(default_error_points(p));
    if points < p + 2 {
        return Err(Error::InvalidConfig {
            field: "quadrature-order".into(),
            reason: format!("needs at least p + 2 = {} points per element", p + 2),
        });
    }
    error_norms_at(problem, space, &state.u, state.t, points)
}
