//! Evaluates a 1D B-spline basis and its derivatives, and checks partition
//! of unity at a few points.
//!
//! cargo run --example basis_functions -- 3 2 4

use sepalpha::splines::{eval_basis, BasisSpec1D};

fn main() -> sepalpha::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, k, n) = match args[..] {
        [p, k, n] => (p, k, n),
        _ => (2, 1, 4),
    };
    let spec = BasisSpec1D::new(p, k, n)?;
    let knots = spec.knots();
    println!("degree {p}, continuity C{k}, {n} elements");
    println!("knots     {knots:?}");
    println!("functions {} ({} interior)", spec.n_basis(), spec.n_interior());
    println!("greville  {:?}", spec.greville());
    println!();
    println!("{:>6}  {:>6}  {:>10}  {:>10}  values", "x", "first", "sum", "sum'");
    for i in 0..=8 {
        let x = i as f64 / 8.0;
        let e = eval_basis(&knots, p, x)?;
        let sum: f64 = e.values.iter().sum();
        let dsum: f64 = e.derivatives.iter().sum();
        let vals: Vec<String> = e.values.iter().map(|v| format!("{v:.4}")).collect();
        println!("{x:>6.3}  {:>6}  {sum:>10.2e}  {dsum:>10.2e}  [{}]", e.first, vals.join(", "));
    }
    Ok(())
}
