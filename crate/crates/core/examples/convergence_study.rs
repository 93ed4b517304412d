//! Runs a small temporal convergence study through the study driver and
//! prints the CSV; the same rows the `sepalpha` binary writes.
//!
//! cargo run --release --example convergence_study

use sepalpha::study::{parse_config, run_study, write_csv};

fn main() -> sepalpha::Result<()> {
    let cfg = parse_config([
        "sepalpha", "--study", "tau_convergence", "--p", "2", "--k", "1", "--n", "32",
        "--tau", "0.02,0.01,0.005", "--T", "0.2", "--rho", "0.5",
        "--scheme", "unsplit,split_lhs,split_both,split_both_mod",
    ])?;
    let rows = run_study(&cfg)?;
    write_csv(&rows, std::io::stdout().lock())?;
    eprintln!();
    for r in rows.iter().filter(|r| r.is_summary()) {
        eprintln!("{:<16} observed order {:.2}", r.scheme, r.err_l2.unwrap_or(f64::NAN));
    }
    Ok(())
}
