//! Parameter studies driven from the command line or a TOML file, emitted as CSV.
//!
//! Every study produces one row per (scheme, ρ∞, n, τ) followed by summary rows
//! whose `study` column ends in `:slope` (`:max` for certify). Slope rows carry
//! least-squares log-log slopes in the error or timing columns and leave the
//! rest empty.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kronops::TensorSpace;
use crate::problems::{error_norms_at, heat_manufactured, ManufacturedKind, ManufacturedProblem, ProblemLoad};
use crate::problems::{default_error_points, HeatProblem};
use crate::spectral::{certify_stability, space_eigenvalues, TensorEigenbasis};
use crate::splines::BasisSpec1D;
use crate::timestepper::{derive_params, initialize, run, steps_for, InitMode, RunConfig, SchemeKind, Stepper};

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 16] = [
    "study",
    "scheme",
    "rho_inf",
    "d",
    "p",
    "k",
    "n",
    "dof",
    "tau",
    "T",
    "err_l2",
    "err_grad_l2",
    "spectral_radius_max",
    "cert_pass",
    "time_total_s",
    "time_per_step_s",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StudyKind {
    HConvergence,
    TauConvergence,
    StabilitySweep,
    CostBenchmark,
    Certify,
}

impl StudyKind {
    pub const ALL: [StudyKind; 5] = [
        StudyKind::HConvergence,
        StudyKind::TauConvergence,
        StudyKind::StabilitySweep,
        StudyKind::CostBenchmark,
        StudyKind::Certify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StudyKind::HConvergence => "h_convergence",
            StudyKind::TauConvergence => "tau_convergence",
            StudyKind::StabilitySweep => "stability_sweep",
            StudyKind::CostBenchmark => "cost_benchmark",
            StudyKind::Certify => "certify",
        }
    }

    fn default_n(self, d: usize) -> Vec<usize> {
        match (self, d) {
            (StudyKind::HConvergence, _) => vec![8, 16, 32, 64],
            (StudyKind::CostBenchmark, 3) => vec![16, 32, 64],
            (StudyKind::CostBenchmark, _) => vec![64, 128, 256, 512, 1024],
            (StudyKind::Certify, _) => vec![8, 16, 32, 64],
            _ => vec![64],
        }
    }

    fn default_tau(self) -> Vec<f64> {
        match self {
            StudyKind::HConvergence => vec![1e-4],
            StudyKind::TauConvergence => vec![1e-2, 5e-3, 2.5e-3, 1.25e-3],
            StudyKind::StabilitySweep => vec![1e-3, 1e-2, 1e-1, 1.0],
            StudyKind::CostBenchmark => vec![1e-3],
            StudyKind::Certify => (-6..=6).map(|e| 10f64.powi(e)).collect(),
        }
    }

    fn simulates(self) -> bool {
        self != StudyKind::Certify
    }
}

impl fmt::Display for StudyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StudyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        StudyKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::InvalidConfig {
                field: "study".into(),
                reason: format!(
                    "unknown study `{s}` (expected h_convergence, tau_convergence, stability_sweep, cost_benchmark or certify)"
                ),
            })
    }
}

/// Raw command-line flags; every field may also come from `--config`.
#[derive(Debug, Clone, Default, Parser, Deserialize)]
#[command(name = "sepalpha", version, about = "Convergence, stability and cost studies for split generalized-alpha heat solvers")]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct StudyArgs {
    /// h_convergence, tau_convergence, stability_sweep, cost_benchmark or certify
    #[arg(long)]
    pub study: Option<String>,
    /// Spatial dimension (2 or 3) [default: 2]
    #[arg(long)]
    pub d: Option<usize>,
    /// Spline degree [default: 2]
    #[arg(long)]
    pub p: Option<usize>,
    /// Continuity across elements, at most p - 1 [default: 1]
    #[arg(long)]
    pub k: Option<usize>,
    /// Elements per direction, comma separated
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Time steps, comma separated
    #[arg(long, value_delimiter = ',')]
    pub tau: Option<Vec<f64>>,
    /// Final time; must be an integer multiple of every tau
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub final_time: Option<f64>,
    /// Spectral radii at infinity, comma separated [default: 0.5]
    #[arg(long, value_delimiter = ',')]
    pub rho: Option<Vec<f64>>,
    /// unsplit, split_lhs, split_both, split_both_mod, comma separated [default: split_lhs]
    #[arg(long, value_delimiter = ',')]
    pub scheme: Option<Vec<String>>,
    /// CSV destination; standard output when absent
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Gauss points per element and direction for the error norms
    #[arg(long)]
    pub quadrature_order: Option<usize>,
    /// projection or interpolation [default: projection]
    #[arg(long)]
    pub init: Option<String>,
    /// Timing repetitions for cost_benchmark, at least 5 [default: 5]
    #[arg(long)]
    pub repetitions: Option<usize>,
    /// Use the forced manufactured solution u·(1+t) instead of the homogeneous one
    #[arg(long)]
    #[serde(default)]
    pub forced: bool,
    /// TOML file with the same keys; command-line flags take precedence
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl StudyArgs {
    /// Fills unset fields from `other`.
    fn or(self, other: StudyArgs) -> StudyArgs {
        StudyArgs {
            study: self.study.or(other.study),
            d: self.d.or(other.d),
            p: self.p.or(other.p),
            k: self.k.or(other.k),
            n: self.n.or(other.n),
            tau: self.tau.or(other.tau),
            final_time: self.final_time.or(other.final_time),
            rho: self.rho.or(other.rho),
            scheme: self.scheme.or(other.scheme),
            output: self.output.or(other.output),
            quadrature_order: self.quadrature_order.or(other.quadrature_order),
            init: self.init.or(other.init),
            repetitions: self.repetitions.or(other.repetitions),
            forced: self.forced || other.forced,
            config: self.config,
        }
    }
}

/// Validated study configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub study: StudyKind,
    pub d: usize,
    pub p: usize,
    pub k: usize,
    pub n: Vec<usize>,
    pub tau: Vec<f64>,
    pub final_time: Option<f64>,
    pub rho: Vec<f64>,
    pub schemes: Vec<SchemeKind>,
    pub output: Option<PathBuf>,
    pub quadrature_order: Option<usize>,
    pub init: InitMode,
    pub repetitions: usize,
    pub forced: bool,
}

fn invalid(field: &str, reason: impl Into<String>) -> Error {
    Error::InvalidConfig {
        field: field.into(),
        reason: reason.into(),
    }
}

impl StudyConfig {
    /// Merges `--config` (if any) under the flags and validates every field.
    pub fn from_args(args: StudyArgs) -> Result<Self> {
        let args = match &args.config {
            Some(path) => {
                let file = load_config_file(path)?;
                args.or(file)
            }
            None => args,
        };
        let study: StudyKind = args
            .study
            .as_deref()
            .ok_or_else(|| invalid("study", "is required"))?
            .parse()?;
        let d = args.d.unwrap_or(2);
        if d != 2 && d != 3 {
            return Err(invalid("d", format!("{d} is not supported (expected 2 or 3)")));
        }
        let p = args.p.unwrap_or(2);
        if p == 0 {
            return Err(invalid("p", "degree must be at least 1"));
        }
        let k = args.k.unwrap_or(1);
        if k + 1 > p {
            return Err(invalid("k", format!("continuity {k} must be at most p - 1 = {}", p - 1)));
        }
        let n = args.n.unwrap_or_else(|| study.default_n(d));
        if n.is_empty() || n.contains(&0) {
            return Err(invalid("n", "needs one or more positive element counts"));
        }
        if p == 1 && n.contains(&1) {
            return Err(invalid("n", "one linear element has no interior unknowns"));
        }
        let tau = args.tau.unwrap_or_else(|| study.default_tau());
        if tau.is_empty() || tau.iter().any(|&t| !(t.is_finite() && t > 0.0)) {
            return Err(invalid("tau", "needs one or more positive time steps"));
        }
        let final_time = args.final_time;
        if study.simulates() {
            let t = final_time.ok_or_else(|| invalid("T", format!("final time is required for {study}")))?;
            if !(t.is_finite() && t >= 0.0) {
                return Err(invalid("T", format!("{t} must be non-negative")));
            }
            for &dt in &tau {
                steps_for(t, dt).map_err(|_| invalid("T", format!("{t} is not an integer multiple of tau = {dt}")))?;
            }
        }
        let rho = args.rho.unwrap_or_else(|| vec![0.5]);
        if rho.is_empty() || rho.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(invalid("rho", "values must lie in [0, 1]"));
        }
        let schemes = match args.scheme {
            Some(list) if !list.is_empty() => list.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?,
            Some(_) => return Err(invalid("scheme", "needs at least one scheme")),
            None => vec![SchemeKind::SplitLhs],
        };
        let init = match args.init {
            Some(s) => s.parse()?,
            None => InitMode::Projection,
        };
        if let Some(q) = args.quadrature_order {
            if q < p + 2 {
                return Err(invalid("quadrature-order", format!("needs at least p + 2 = {} points", p + 2)));
            }
        }
        let repetitions = args.repetitions.unwrap_or(5);
        if study == StudyKind::CostBenchmark && repetitions < 5 {
            return Err(invalid("repetitions", "cost_benchmark needs at least 5 repetitions"));
        }
        Ok(Self {
            study,
            d,
            p,
            k,
            n,
            tau,
            final_time,
            rho,
            schemes,
            output: args.output,
            quadrature_order: args.quadrature_order,
            init,
            repetitions: repetitions.max(1),
            forced: args.forced,
        })
    }

    fn problem(&self) -> Result<ManufacturedProblem> {
        if self.forced {
            ManufacturedProblem::new(self.d, ManufacturedKind::Forced)
        } else {
            heat_manufactured(self.d)
        }
    }

    fn space(&self, n: usize) -> Result<TensorSpace> {
        TensorSpace::isotropic(self.d, BasisSpec1D::new(self.p, self.k, n)?)
    }
}

fn load_config_file(path: &Path) -> Result<StudyArgs> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid("config", format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| invalid("config", format!("{}: {e}", path.display())))
}

/// Parses an argument list (program name first) into a validated configuration.
pub fn parse_config<I, T>(argv: I) -> Result<StudyConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = StudyArgs::try_parse_from(argv).map_err(|e| invalid("arguments", e.to_string().trim_end()))?;
    StudyConfig::from_args(args)
}

/// One CSV record; empty cells are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub study: String,
    pub scheme: String,
    pub rho_inf: Option<f64>,
    pub d: usize,
    pub p: usize,
    pub k: usize,
    pub n: Option<usize>,
    pub dof: Option<usize>,
    pub tau: Option<f64>,
    #[serde(rename = "T")]
    pub final_time: Option<f64>,
    pub err_l2: Option<f64>,
    pub err_grad_l2: Option<f64>,
    pub spectral_radius_max: Option<f64>,
    pub cert_pass: Option<bool>,
    pub time_total_s: Option<f64>,
    pub time_per_step_s: Option<f64>,
}

impl CsvRow {
    fn base(cfg: &StudyConfig, study: String, scheme: SchemeKind, rho: f64) -> Self {
        Self {
            study,
            scheme: scheme.to_string(),
            rho_inf: Some(rho),
            d: cfg.d,
            p: cfg.p,
            k: cfg.k,
            n: None,
            dof: None,
            tau: None,
            final_time: cfg.final_time,
            err_l2: None,
            err_grad_l2: None,
            spectral_radius_max: None,
            cert_pass: None,
            time_total_s: None,
            time_per_step_s: None,
        }
    }

    /// Slope and maximum rows appended after the detail rows.
    pub fn is_summary(&self) -> bool {
        self.study.contains(':')
    }
}

/// Least-squares slope of `log y` against `log x`; `None` with fewer than two usable points.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts
        .iter()
        .fold((0.0, 0.0), |(n, d), (x, y)| (n + (x - mx) * (y - my), d + (x - mx).powi(2)));
    (den > 0.0).then(|| num / den)
}

/// Error of the exact-in-time semi-discrete solution at `t`: the floor below
/// which time-step refinement cannot push the fully discrete error. Needs `f = 0`.
pub fn spatial_floor(
    problem: &dyn HeatProblem,
    space: &TensorSpace,
    t: f64,
    init: InitMode,
    points: Option<usize>,
) -> Result<crate::problems::ErrorReport> {
    if !problem.forcing_is_zero() {
        return Err(Error::InvalidParams("the exact semi-discrete solution needs f = 0".into()));
    }
    let load = ProblemLoad::new(problem, space)?;
    let st = initialize(problem, space, &load, init)?;
    let basis = TensorEigenbasis::new(space)?;
    let u = basis.propagate_exact(&st.u, t)?;
    let p = space.specs().iter().map(BasisSpec1D::degree).max().unwrap_or(1);
    error_norms_at(problem, space, &u, t, points.unwrap_or(default_error_points(p)))
}

/// Temporal slope over points whose error is at least `10×` the spatial floor.
pub fn temporal_slope(points: &[(f64, f64)], floor: f64) -> Option<f64> {
    let kept: Vec<(f64, f64)> = points.iter().copied().filter(|&(_, e)| e >= 10.0 * floor).collect();
    fit_loglog_slope(&kept)
}

/// Initializes and times `T/τ` steps without computing errors.
pub fn time_steps(config: &RunConfig<'_>) -> Result<(f64, f64)> {
    let start = Instant::now();
    let n = steps_for(config.final_time, config.params.tau)?;
    let load = ProblemLoad::new(config.problem, config.space)?;
    let mut st = initialize(config.problem, config.space, &load, config.init)?;
    let mut stepper = Stepper::new(config.space, config.scheme, config.params, &load)?;
    let t0 = Instant::now();
    for _ in 0..n {
        stepper.step(&mut st)?;
    }
    let steps = t0.elapsed().as_secs_f64();
    Ok((start.elapsed().as_secs_f64(), if n == 0 { 0.0 } else { steps / n as f64 }))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

fn with_context<T>(r: Result<T>, context: impl FnOnce() -> String) -> Result<T> {
    r.map_err(|e| Error::Study {
        context: context(),
        source: Box::new(e),
    })
}

/// Runs the configured study and returns detail rows followed by summary rows.
pub fn run_study(cfg: &StudyConfig) -> Result<Vec<CsvRow>> {
    let problem = cfg.problem()?;
    let mut rows = Vec::new();
    let mut spaces: HashMap<usize, (TensorSpace, Vec<Vec<f64>>)> = HashMap::new();
    for &n in &cfg.n {
        let space = with_context(cfg.space(n), || format!("n={n}"))?;
        let eigs = with_context(space_eigenvalues(&space), || format!("eigenvalues for n={n}"))?;
        spaces.insert(n, (space, eigs));
    }
    let study = cfg.study.name().to_string();
    for &scheme in &cfg.schemes {
        for &rho in &cfg.rho {
            for &n in &cfg.n {
                let (space, eigs) = &spaces[&n];
                for &tau in &cfg.tau {
                    let ctx = || format!("scheme={scheme} rho_inf={rho} n={n} tau={tau}");
                    let params = with_context(derive_params(rho, tau), ctx)?;
                    let cert = certify_stability(eigs, &params, &[tau], &[scheme]);
                    let mut row = CsvRow::base(cfg, study.clone(), scheme, rho);
                    row.n = Some(n);
                    row.dof = Some(space.n_dofs());
                    row.tau = Some(tau);
                    row.spectral_radius_max = Some(cert.entries[0].max_radius);
                    row.cert_pass = Some(cert.passed());
                    if cfg.study.simulates() {
                        let rc = RunConfig {
                            problem: &problem,
                            space,
                            scheme,
                            params,
                            final_time: cfg.final_time.unwrap_or(0.0),
                            init: cfg.init,
                            error_points: cfg.quadrature_order,
                        };
                        let summary = with_context(run(&rc), ctx)?;
                        row.err_l2 = Some(summary.errors.l2);
                        row.err_grad_l2 = Some(summary.errors.grad_l2);
                        let mut totals = vec![summary.total_time];
                        let mut per_step = vec![summary.mean_step_time()];
                        if cfg.study == StudyKind::CostBenchmark {
                            for _ in 1..cfg.repetitions {
                                let (total, step) = with_context(time_steps(&rc), ctx)?;
                                totals.push(total);
                                per_step.push(step);
                            }
                        }
                        row.time_total_s = Some(median(totals));
                        row.time_per_step_s = Some(median(per_step));
                    }
                    rows.push(row);
                }
            }
        }
    }
    let summaries = summary_rows(cfg, &rows, &problem, &spaces)?;
    rows.extend(summaries);
    Ok(rows)
}

fn summary_rows(
    cfg: &StudyConfig,
    rows: &[CsvRow],
    problem: &dyn HeatProblem,
    spaces: &HashMap<usize, (TensorSpace, Vec<Vec<f64>>)>,
) -> Result<Vec<CsvRow>> {
    let label = format!("{}:slope", cfg.study.name());
    let mut out = Vec::new();
    let select = |scheme: SchemeKind, rho: f64| {
        rows.iter()
            .filter(move |r| r.scheme == scheme.name() && r.rho_inf == Some(rho))
    };
    for &scheme in &cfg.schemes {
        for &rho in &cfg.rho {
            match cfg.study {
                StudyKind::HConvergence => {
                    for &tau in &cfg.tau {
                        let group: Vec<&CsvRow> = select(scheme, rho).filter(|r| r.tau == Some(tau)).collect();
                        let h = |r: &CsvRow| 1.0 / r.n.unwrap_or(1) as f64;
                        let l2: Vec<_> = group.iter().map(|r| (h(r), r.err_l2.unwrap_or(0.0))).collect();
                        let gr: Vec<_> = group.iter().map(|r| (h(r), r.err_grad_l2.unwrap_or(0.0))).collect();
                        let mut row = CsvRow::base(cfg, label.clone(), scheme, rho);
                        row.tau = Some(tau);
                        row.err_l2 = fit_loglog_slope(&l2);
                        row.err_grad_l2 = fit_loglog_slope(&gr);
                        out.push(row);
                    }
                }
                StudyKind::TauConvergence => {
                    for &n in &cfg.n {
                        let group: Vec<&CsvRow> = select(scheme, rho).filter(|r| r.n == Some(n)).collect();
                        let (floor_l2, floor_gr) = if problem.forcing_is_zero() {
                            let f = spatial_floor(
                                problem,
                                &spaces[&n].0,
                                cfg.final_time.unwrap_or(0.0),
                                cfg.init,
                                cfg.quadrature_order,
                            )?;
                            (f.l2, f.grad_l2)
                        } else {
                            (0.0, 0.0)
                        };
                        let l2: Vec<_> = group.iter().map(|r| (r.tau.unwrap_or(0.0), r.err_l2.unwrap_or(0.0))).collect();
                        let gr: Vec<_> = group
                            .iter()
                            .map(|r| (r.tau.unwrap_or(0.0), r.err_grad_l2.unwrap_or(0.0)))
                            .collect();
                        let mut row = CsvRow::base(cfg, label.clone(), scheme, rho);
                        row.n = Some(n);
                        row.dof = group.first().and_then(|r| r.dof);
                        row.err_l2 = temporal_slope(&l2, floor_l2);
                        row.err_grad_l2 = temporal_slope(&gr, floor_gr);
                        out.push(row);
                    }
                }
                StudyKind::CostBenchmark => {
                    for &tau in &cfg.tau {
                        let group: Vec<&CsvRow> = select(scheme, rho).filter(|r| r.tau == Some(tau)).collect();
                        let pts = |f: fn(&CsvRow) -> Option<f64>| -> Vec<(f64, f64)> {
                            group
                                .iter()
                                .map(|r| (r.dof.unwrap_or(0) as f64, f(r).unwrap_or(0.0)))
                                .collect()
                        };
                        let mut row = CsvRow::base(cfg, label.clone(), scheme, rho);
                        row.tau = Some(tau);
                        row.time_per_step_s = fit_loglog_slope(&pts(|r| r.time_per_step_s));
                        row.time_total_s = fit_loglog_slope(&pts(|r| r.time_total_s));
                        out.push(row);
                    }
                }
                StudyKind::StabilitySweep => {
                    for &n in &cfg.n {
                        let group: Vec<&CsvRow> = select(scheme, rho).filter(|r| r.n == Some(n)).collect();
                        let l2: Vec<_> = group.iter().map(|r| (r.tau.unwrap_or(0.0), r.err_l2.unwrap_or(0.0))).collect();
                        let gr: Vec<_> = group
                            .iter()
                            .map(|r| (r.tau.unwrap_or(0.0), r.err_grad_l2.unwrap_or(0.0)))
                            .collect();
                        let mut row = CsvRow::base(cfg, label.clone(), scheme, rho);
                        row.n = Some(n);
                        row.err_l2 = fit_loglog_slope(&l2);
                        row.err_grad_l2 = fit_loglog_slope(&gr);
                        out.push(row);
                    }
                }
                StudyKind::Certify => {
                    let group: Vec<&CsvRow> = select(scheme, rho).collect();
                    let mut row = CsvRow::base(cfg, format!("{}:max", cfg.study.name()), scheme, rho);
                    row.spectral_radius_max = group
                        .iter()
                        .filter_map(|r| r.spectral_radius_max)
                        .reduce(f64::max);
                    row.cert_pass = Some(group.iter().all(|r| r.cert_pass == Some(true)));
                    out.push(row);
                }
            }
        }
    }
    Ok(out)
}

/// Writes rows with the fixed header.
pub fn write_csv<W: Write>(rows: &[CsvRow], writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows written by [`write_csv`].
pub fn read_csv<R: std::io::Read>(reader: R) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_COLUMNS {
        return Err(Error::Io(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// Parses, runs and writes the study named by `argv`.
pub fn main_with_args<I, T>(argv: I) -> Result<Vec<CsvRow>>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = parse_config(argv)?;
    execute(&cfg)
}

/// Runs `cfg` and writes its CSV to `cfg.output` or standard output.
pub fn execute(cfg: &StudyConfig) -> Result<Vec<CsvRow>> {
    let rows = run_study(cfg)?;
    match &cfg.output {
        Some(path) => write_csv(&rows, std::fs::File::create(path)?)?,
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    Ok(rows)
}
