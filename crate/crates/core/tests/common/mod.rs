//! Independent reference constructions shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use sepalpha::quadrature::GaussLegendre;
use sepalpha::splines::{eval_basis, BasisSpec1D};

/// Dense 2D mass and stiffness on the interior functions of `spec ⊗ spec`,
/// assembled element by element with tensor Gauss quadrature and 2D basis
/// products, without using any 1D matrix.
pub fn element_loop_2d(spec: &BasisSpec1D) -> (DMatrix<f64>, DMatrix<f64>) {
    let p = spec.degree();
    let knots = spec.knots();
    let nb = spec.n_basis();
    let ni = spec.n_interior();
    let n = ni * ni;
    let mut mass = DMatrix::zeros(n, n);
    let mut stiff = DMatrix::zeros(n, n);
    let rule = GaussLegendre::new(p + 1);
    let h = spec.element_size();
    // interior index of global basis function g, if any
    let interior = |g: usize| (g >= 1 && g + 1 < nb).then(|| g - 1);
    for ey in 0..spec.n_elements() {
        for ex in 0..spec.n_elements() {
            let xs: Vec<(f64, f64)> = rule.on_interval(ex as f64 * h, (ex + 1) as f64 * h).collect();
            let ys: Vec<(f64, f64)> = rule.on_interval(ey as f64 * h, (ey + 1) as f64 * h).collect();
            for &(y, wy) in &ys {
                let by = eval_basis(&knots, p, y).unwrap();
                for &(x, wx) in &xs {
                    let bx = eval_basis(&knots, p, x).unwrap();
                    let w = wx * wy;
                    // collect the active 2D functions: value and gradient
                    let mut active = Vec::new();
                    for (jy, (vy, dy)) in by.values.iter().zip(&by.derivatives).enumerate() {
                        for (jx, (vx, dx)) in bx.values.iter().zip(&bx.derivatives).enumerate() {
                            if let (Some(ix), Some(iy)) = (interior(bx.first + jx), interior(by.first + jy)) {
                                active.push((ix + ni * iy, vx * vy, dx * vy, vx * dy));
                            }
                        }
                    }
                    for &(a, va, gxa, gya) in &active {
                        for &(b, vb, gxb, gyb) in &active {
                            mass[(a, b)] += w * va * vb;
                            stiff[(a, b)] += w * (gxa * gxb + gya * gyb);
                        }
                    }
                }
            }
        }
    }
    (mass, stiff)
}

/// Dense Kronecker product with the first factor acting on the fastest index.
pub fn kron_fast_first(factors: &[&DMatrix<f64>]) -> DMatrix<f64> {
    let mut acc = DMatrix::from_element(1, 1, 1.0);
    for f in factors {
        acc = f.kronecker(&acc);
    }
    acc
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax()
}
