//! Drives a study from a TOML file, overriding one key on the command line,
//! and writes the CSV to a file next to it.

use sepalpha::study::{main_with_args, read_csv};

fn main() -> sepalpha::Result<()> {
    let dir = tempfile::tempdir()?;
    let config = dir.path().join("study.toml");
    let output = dir.path().join("rows.csv");
    std::fs::write(
        &config,
        r#"study = "h_convergence"
p = 2
k = 1
n = [4, 8, 16]
tau = [1e-3]
T = 0.05
rho = [0.5]
scheme = ["split_lhs", "split_both_mod"]
"#,
    )?;
    let cfg = config.to_string_lossy().into_owned();
    let out = output.to_string_lossy().into_owned();
    // --rho on the command line wins over the file
    main_with_args(["sepalpha", "--config", &cfg, "--rho", "1", "--output", &out])?;
    let rows = read_csv(std::fs::File::open(&output)?)?;
    println!("{}", std::fs::read_to_string(&output)?.lines().next().unwrap_or(""));
    for r in &rows {
        println!(
            "{:<16} {:<14} rho {:?} n {:?} err_l2 {:?}",
            r.study, r.scheme, r.rho_inf, r.n, r.err_l2
        );
    }
    Ok(())
}
