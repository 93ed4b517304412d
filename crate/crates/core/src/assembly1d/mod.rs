//! 1D mass and stiffness matrices by element-wise Gauss quadrature.
//!
//! The first and last basis functions of an open knot vector are the only
//! ones that do not vanish at the end points; homogeneous Dirichlet data is
//! imposed by removing them. Every higher-level operator is numbered by the
//! remaining interior functions.

mod band;

pub use band::{BandedCholesky, BandedMatrix};

use crate::error::Result;
use crate::quadrature::GaussLegendre;
use crate::splines::{eval_basis, BasisSpec1D};

/// Bilinear form integrated by [`assemble_full`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilinearForm {
    /// `∫ θ_i θ_j dx`
    Mass,
    /// `∫ θ_i' θ_j' dx`
    Stiffness,
}

/// Assembles `form` over all `n_basis` functions with `points` Gauss points per element.
pub fn assemble_full(spec: &BasisSpec1D, form: BilinearForm, points: usize) -> Result<BandedMatrix> {
    let p = spec.degree();
    let knots = spec.knots();
    let rule = GaussLegendre::new(points);
    let mut mat = BandedMatrix::zeros(spec.n_basis(), p);
    let h = spec.element_size();
    for e in 0..spec.n_elements() {
        let (a, b) = (e as f64 * h, (e + 1) as f64 * h);
        for (x, w) in rule.on_interval(a, b) {
            let ev = eval_basis(&knots, p, x)?;
            let vals = match form {
                BilinearForm::Mass => &ev.values,
                BilinearForm::Stiffness => &ev.derivatives,
            };
            for (r, vi) in vals.iter().enumerate() {
                for (c, vj) in vals.iter().enumerate() {
                    mat.add(ev.first + r, ev.first + c, w * vi * vj);
                }
            }
        }
    }
    Ok(mat)
}

/// Mass matrix on the interior functions, `p + 1` Gauss points per element.
pub fn assemble_mass_1d(spec: &BasisSpec1D) -> Result<BandedMatrix> {
    Ok(assemble_full(spec, BilinearForm::Mass, spec.degree() + 1)?.eliminate_boundary())
}

/// Stiffness matrix on the interior functions, `p + 1` Gauss points per element.
pub fn assemble_stiffness_1d(spec: &BasisSpec1D) -> Result<BandedMatrix> {
    Ok(assemble_full(spec, BilinearForm::Stiffness, spec.degree() + 1)?.eliminate_boundary())
}

/// `M + c K`.
pub fn combine(m: &BandedMatrix, c: f64, k: &BandedMatrix) -> Result<BandedMatrix> {
    m.combine(c, k)
}
