//! Times split_lhs steps on growing 2D meshes; the cost per unknown should
//! stay flat.
//!
//! cargo run --release --example cost_benchmark -- 512

use sepalpha::kronops::TensorSpace;
use sepalpha::problems::heat_manufactured;
use sepalpha::splines::BasisSpec1D;
use sepalpha::study::{fit_loglog_slope, time_steps};
use sepalpha::timestepper::{derive_params, InitMode, RunConfig, SchemeKind};

fn main() -> sepalpha::Result<()> {
    let n_max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(128);
    let problem = heat_manufactured(2)?;
    let mut points = Vec::new();
    println!("{:>6} {:>10} {:>12} {:>14}", "n", "dof", "s/step", "s/(step dof)");
    let mut n = 32;
    while n <= n_max {
        let space = TensorSpace::isotropic(2, BasisSpec1D::new(2, 1, n)?)?;
        let (_, per_step) = time_steps(&RunConfig {
            problem: &problem,
            space: &space,
            scheme: SchemeKind::SplitLhs,
            params: derive_params(0.0, 1e-3)?,
            final_time: 0.01,
            init: InitMode::Projection,
            error_points: None,
        })?;
        let dof = space.n_dofs();
        println!("{n:>6} {dof:>10} {per_step:>12.3e} {:>14.3e}", per_step / dof as f64);
        points.push((dof as f64, per_step));
        n *= 2;
    }
    println!("log-log slope of time vs dof: {:.3}", fit_loglog_slope(&points).unwrap_or(f64::NAN));
    Ok(())
}
