//! Drives the stepper by hand on a 3D problem with a source term, printing
//! the error history. Shows the lower-level API under `run`.

use sepalpha::kronops::TensorSpace;
use sepalpha::problems::{error_norms, ManufacturedKind, ManufacturedProblem, ProblemLoad};
use sepalpha::splines::BasisSpec1D;
use sepalpha::timestepper::{derive_params, initialize, InitMode, SchemeKind, Stepper};

fn main() -> sepalpha::Result<()> {
    let problem = ManufacturedProblem::new(3, ManufacturedKind::Forced)?;
    let space = TensorSpace::isotropic(3, BasisSpec1D::new(2, 1, 8)?)?;
    let tau = 0.005;
    let params = derive_params(1.0, tau)?;
    let load = ProblemLoad::new(&problem, &space)?;
    let mut state = initialize(&problem, &space, &load, InitMode::Projection)?;
    let mut stepper = Stepper::new(&space, SchemeKind::SplitLhs, params, &load)?;
    println!("3D forced problem, {} unknowns, split_lhs, tau = {tau}", space.n_dofs());
    println!("{:>6} {:>12} {:>12}", "t", "L2 error", "H1 error");
    for step in 1..=20 {
        stepper.step(&mut state)?;
        if step % 4 == 0 {
            state.t = step as f64 * tau;
            let e = error_norms(&state, &problem, &space, state.t, None)?;
            println!("{:>6.3} {:>12.4e} {:>12.4e}", state.t, e.l2, e.grad_l2);
        }
    }
    Ok(())
}
