//! Heat equation solvers on tensor-product B-spline spaces with generalized-α
//! time stepping and Kronecker-product splitting.
//!
//! The spatial operators of a tensor-product spline space separate into 1D
//! factors: `M = ⊗ M_ξ` and `K = Σ_ξ K_ξ ⊗ (M elsewhere)`. Replacing the
//! implicit operator `M + ηK` by `⊗(M_ξ + ηK_ξ)` perturbs it only at second
//! order in the step size, and the product is solved with one banded
//! factorization per axis, so a step costs `O(p² N)`.
//!
//! ```
//! use sepalpha::kronops::TensorSpace;
//! use sepalpha::problems::heat_manufactured;
//! use sepalpha::splines::BasisSpec1D;
//! use sepalpha::timestepper::{derive_params, run, InitMode, RunConfig, SchemeKind};
//!
//! let space = TensorSpace::isotropic(2, BasisSpec1D::new(2, 1, 16)?)?;
//! let problem = heat_manufactured(2)?;
//! let summary = run(&RunConfig {
//!     problem: &problem,
//!     space: &space,
//!     scheme: SchemeKind::SplitLhs,
//!     params: derive_params(0.5, 1e-3)?,
//!     final_time: 0.01,
//!     init: InitMode::Projection,
//!     error_points: None,
//! })?;
//! assert!(summary.errors.l2 < 1e-3);
//! # Ok::<(), sepalpha::Error>(())
//! ```

pub mod assembly1d;
pub mod error;
pub mod kronops;
pub mod problems;
pub mod quadrature;
pub mod spectral;
pub mod splines;
pub mod study;
pub mod timestepper;

pub use error::{Error, Result};
