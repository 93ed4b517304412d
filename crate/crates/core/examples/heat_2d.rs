//! Solves the 2D manufactured heat problem with all four time integrators
//! and reports final errors and per-step cost.
//!
//! cargo run --release --example heat_2d -- 32 0.005

use sepalpha::kronops::TensorSpace;
use sepalpha::problems::heat_manufactured;
use sepalpha::splines::BasisSpec1D;
use sepalpha::timestepper::{derive_params, run, InitMode, RunConfig, SchemeKind};

fn main() -> sepalpha::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(16);
    let tau: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.01);
    let space = TensorSpace::isotropic(2, BasisSpec1D::new(2, 1, n)?)?;
    let problem = heat_manufactured(2)?;
    let params = derive_params(0.5, tau)?;
    println!("C1 quadratics, n = {n}, {} unknowns, tau = {tau}, rho_inf = 0.5, T = 0.1", space.n_dofs());
    println!("{:<16} {:>12} {:>12} {:>8} {:>12}", "scheme", "L2 error", "H1 error", "steps", "s/step");
    for scheme in SchemeKind::ALL {
        let s = run(&RunConfig {
            problem: &problem,
            space: &space,
            scheme,
            params,
            final_time: 0.1,
            init: InitMode::Projection,
            error_points: None,
        })?;
        println!(
            "{:<16} {:>12.4e} {:>12.4e} {:>8} {:>12.3e}",
            scheme.name(),
            s.errors.l2,
            s.errors.grad_l2,
            s.n_steps,
            s.mean_step_time()
        );
    }
    Ok(())
}
