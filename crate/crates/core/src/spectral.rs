//! Modal analysis of the time-stepping schemes.
//!
//! The per-axis generalized eigenproblems `K_ξ v = λ M_ξ v` diagonalize every
//! operator the schemes use (`M`, `K`, `⊗(M_ξ + cK_ξ)`), so the global
//! amplification matrix is similar to a block-diagonal matrix of 2x2 blocks,
//! one per tensor mode. Stability is certified by scanning those blocks over
//! the actual discrete eigenvalues.

use nalgebra::{Complex, DMatrix};

use crate::assembly1d::BandedMatrix;
use crate::error::{Error, Result};
use crate::kronops::{apply_tensor_product, dense_expand, DenseLines, KronOperator, LineOperator, TensorField, TensorSpace};
use crate::timestepper::{GenAlphaParams, SchemeKind};

/// Residual tolerance of the eigensolve, relative to `‖K v‖`.
pub const EIG_RESIDUAL_TOL: f64 = 1e-10;

/// Slack allowed above 1 before a spectral radius counts as unstable.
pub const RADIUS_TOL: f64 = 1e-12;

/// Generalized eigenpairs of `(K, M)`: ascending eigenvalues and M-orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct GenEigenDecomp1D {
    pub eigenvalues: Vec<f64>,
    /// Column `j` belongs to `eigenvalues[j]`.
    pub eigenvectors: DMatrix<f64>,
}

impl GenEigenDecomp1D {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `max_j ‖K v_j − λ_j M v_j‖ / ‖K v_j‖`.
    pub fn max_relative_residual(&self, k: &BandedMatrix, m: &BandedMatrix) -> f64 {
        let kd = k.to_dense();
        let md = m.to_dense();
        (0..self.dim())
            .map(|j| {
                let v = self.eigenvectors.column(j);
                let kv = &kd * v;
                let r = &kv - (&md * v) * self.eigenvalues[j];
                r.norm() / kv.norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Symmetric reduction: `M = L Lᵀ`, eigen-decompose `L⁻¹ K L⁻ᵀ`, map back with `L⁻ᵀ`.
pub fn generalized_eig_1d(k: &BandedMatrix, m: &BandedMatrix) -> Result<GenEigenDecomp1D> {
    if k.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: k.dim(),
        });
    }
    let n = m.dim();
    let chol = m.to_dense().cholesky().ok_or_else(|| {
        // report the failing pivot through the banded factorization
        match m.factor() {
            Err(e) => e,
            Ok(_) => Error::NotPositiveDefinite { row: 0, pivot: 0.0 },
        }
    })?;
    let l = chol.l();
    let kd = k.to_dense();
    let x = l
        .solve_lower_triangular(&kd)
        .ok_or(Error::NotPositiveDefinite { row: 0, pivot: 0.0 })?;
    let c = l
        .solve_lower_triangular(&x.transpose())
        .ok_or(Error::NotPositiveDefinite { row: 0, pivot: 0.0 })?;
    let c = (&c + c.transpose()) * 0.5;
    let eig = c.symmetric_eigen();
    let v = l
        .transpose()
        .solve_upper_triangular(&eig.eigenvectors)
        .ok_or(Error::NotPositiveDefinite { row: 0, pivot: 0.0 })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src).into_owned();
        // deterministic sign: largest-magnitude entry positive
        let imax = col.iamax();
        if col[imax] < 0.0 {
            col.neg_mut();
        }
        eigenvectors.set_column(dst, &col);
    }
    Ok(GenEigenDecomp1D {
        eigenvalues,
        eigenvectors,
    })
}

/// Per-axis eigenbases of a tensor space; exact modal transforms and the
/// fast-diagonalization solve of the unsplit operator `M + ηK`.
#[derive(Debug, Clone)]
pub struct TensorEigenbasis {
    dims: Vec<usize>,
    decomps: Vec<GenEigenDecomp1D>,
    forward: Vec<DenseLines>,
    forward_t: Vec<DenseLines>,
    inverse: Vec<DenseLines>,
    mode_sums: Vec<f64>,
}

impl TensorEigenbasis {
    pub fn new(space: &TensorSpace) -> Result<Self> {
        let mut decomps = Vec::with_capacity(space.dim());
        let mut forward = Vec::new();
        let mut forward_t = Vec::new();
        let mut inverse = Vec::new();
        for (k, m) in space.stiffness_1d().iter().zip(space.mass_1d()) {
            let d = generalized_eig_1d(k, m)?;
            let n = d.dim();
            let p = DenseLines::from_fn(n, n, |i, j| d.eigenvectors[(i, j)]);
            // P⁻¹ = Pᵀ M
            let ptm = d.eigenvectors.transpose() * m.to_dense();
            inverse.push(DenseLines::from_fn(n, n, |i, j| ptm[(i, j)]));
            forward_t.push(p.transpose());
            forward.push(p);
            decomps.push(d);
        }
        let dims = space.dims();
        let mode_sums = mode_eigenvalue_sums(&decomps);
        Ok(Self {
            dims,
            decomps,
            forward,
            forward_t,
            inverse,
            mode_sums,
        })
    }

    pub fn decomps(&self) -> &[GenEigenDecomp1D] {
        &self.decomps
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `Σ_ξ λ_ξ` for every tensor mode, axis 0 fastest.
    pub fn mode_sums(&self) -> &[f64] {
        &self.mode_sums
    }

    fn apply_all(&self, ops: &[DenseLines], data: &[f64]) -> Vec<f64> {
        let refs: Vec<&dyn LineOperator> = ops.iter().map(|o| o as &dyn LineOperator).collect();
        apply_tensor_product(&refs, &self.dims, data).1
    }

    /// Modal coefficients `(⊗P)⁻¹ u`.
    pub fn to_modal(&self, u: &[f64]) -> Vec<f64> {
        self.apply_all(&self.inverse, u)
    }

    /// Coefficients `(⊗P) c`.
    pub fn from_modal(&self, c: &[f64]) -> Vec<f64> {
        self.apply_all(&self.forward, c)
    }

    /// Solves `(M + ηK) x = r` exactly: `x = (⊗P)(I + ηΛ)⁻¹(⊗P)ᵀ r`.
    pub fn solve_shifted(&self, eta: f64, rhs: &[f64]) -> Vec<f64> {
        let mut c = self.apply_all(&self.forward_t, rhs);
        for (v, s) in c.iter_mut().zip(&self.mode_sums) {
            *v /= 1.0 + eta * s;
        }
        self.from_modal(&c)
    }

    /// Semi-discrete solution of `M U' + K U = 0` at time `t`, exact in time.
    pub fn propagate_exact(&self, u0: &TensorField, t: f64) -> Result<TensorField> {
        if u0.dims() != self.dims.as_slice() {
            return Err(Error::DimensionMismatch {
                expected: self.dims.iter().product(),
                found: u0.len(),
            });
        }
        let mut c = self.to_modal(u0.as_slice());
        for (v, s) in c.iter_mut().zip(&self.mode_sums) {
            *v *= (-s * t).exp();
        }
        TensorField::from_vec(&self.dims, self.from_modal(&c))
    }
}

fn mode_eigenvalue_sums(decomps: &[GenEigenDecomp1D]) -> Vec<f64> {
    let mut sums = vec![0.0];
    for d in decomps {
        let mut next = Vec::with_capacity(sums.len() * d.dim());
        for &l in &d.eigenvalues {
            next.extend(sums.iter().map(|s| s + l));
        }
        sums = next;
    }
    sums
}

/// The 2x2 block of the amplification matrix acting on `(U, τV)` for one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeAmplification {
    pub matrix: [[f64; 2]; 2],
    pub scheme: SchemeKind,
    /// Per-axis eigenvalues of the mode (a single entry for the unsplit closed form).
    pub lambdas: Vec<f64>,
}

impl ModeAmplification {
    pub fn trace(&self) -> f64 {
        self.matrix[0][0] + self.matrix[1][1]
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn eigenvalues(&self) -> [Complex<f64>; 2] {
        eigenvalues_2x2(&self.matrix)
    }

    pub fn spectral_radius(&self) -> f64 {
        let [a, b] = self.eigenvalues();
        a.norm().max(b.norm())
    }
}

fn eigenvalues_2x2(m: &[[f64; 2]; 2]) -> [Complex<f64>; 2] {
    let half_tr = 0.5 * (m[0][0] + m[1][1]);
    let half_diff = 0.5 * (m[0][0] - m[1][1]);
    let disc = half_diff * half_diff + m[0][1] * m[1][0];
    if disc >= 0.0 {
        let s = disc.sqrt();
        [Complex::new(half_tr + s, 0.0), Complex::new(half_tr - s, 0.0)]
    } else {
        let s = (-disc).sqrt();
        [Complex::new(half_tr, s), Complex::new(half_tr, -s)]
    }
}

/// `e_0..e_d`: elementary symmetric polynomials of the per-axis eigenvalues.
fn elementary_symmetric(lambdas: &[f64]) -> Vec<f64> {
    let mut e = vec![1.0];
    for &l in lambdas {
        e.push(0.0);
        for k in (1..e.len()).rev() {
            e[k] += l * e[k - 1];
        }
    }
    e
}

/// Mode block of any scheme, on `(U, τV)`.
///
/// With `ℓ` and `r` the scalar symbols of the left and velocity operators,
/// `δ(τV) = −(τκ U + r τV) / (α_m ℓ)`, `U' = U + τV + γ δ(τV)`, `τV' = τV + δ(τV)`.
/// Every symbol is a polynomial in the elementary symmetric sums `e_k` of the
/// per-axis eigenvalues; the numerators `α_m ℓ − γτκ`, `α_m ℓ − γr` and
/// `α_m ℓ − r` are formed coefficient by coefficient with the identity
/// `α_m η = γζ` applied exactly, so entries that vanish as `τλ → ∞` carry no
/// cancellation error.
pub fn mode_matrix(scheme: SchemeKind, lambdas: &[f64], params: &GenAlphaParams) -> ModeAmplification {
    let (am, g, tau) = (params.alpha_m, params.gamma, params.tau);
    let eta = params.eta();
    let s = params.zeta();
    let e = elementary_symmetric(lambdas);
    let top = e.len() - 1;
    // α_m ℓ = Σ c_k e_k with c_k = α_m η^k = γ s η^(k−1) for k ≥ 1
    let c = |k: usize| -> f64 {
        match (scheme, k) {
            (_, 0) => am,
            (SchemeKind::Unsplit, 1) => g * s,
            (SchemeKind::Unsplit, _) => 0.0,
            (_, k) => g * s * eta.powi(k as i32 - 1),
        }
    };
    let (mut den, mut n11, mut n12, mut n22) = (0.0, 0.0, 0.0, 0.0);
    for k in 0..=top {
        let ck = c(k);
        den += ck * e[k];
        // α_m ℓ − γτκ
        n11 += e[k] * if k == 1 { g * tau * (params.alpha_f - 1.0) } else { ck };
        match scheme {
            SchemeKind::Unsplit | SchemeKind::SplitLhs => {
                // r = 1 + sκ
                n12 += e[k] * match k {
                    0 => am - g,
                    1 => 0.0,
                    _ => ck,
                };
                n22 += e[k] * match k {
                    0 => am - 1.0,
                    1 => s * (g - 1.0),
                    _ => ck,
                };
            }
            SchemeKind::SplitBoth => {
                // r = Σ s^k e_k
                n12 += e[k] * if k == 0 { am - g } else { g * s * (eta.powi(k as i32 - 1) - s.powi(k as i32 - 1)) };
                n22 += e[k] * if k == 0 { am - 1.0 } else { s * (g * eta.powi(k as i32 - 1) - s.powi(k as i32 - 1)) };
            }
            SchemeKind::SplitBothMod => {}
        }
    }
    if scheme == SchemeKind::SplitBothMod {
        // γ r = α_m ℓ + γ − α_m
        n12 = am - g;
        n22 = den * (1.0 - 1.0 / g) - (g - am) / g;
    }
    ModeAmplification {
        matrix: [[n11 / den, n12 / den], [-tau * e[1.min(top)] / den, n22 / den]],
        scheme,
        lambdas: lambdas.to_vec(),
    }
}

/// Unsplit block written with `d = α_m + τλγα_f`.
pub fn unsplit_mode_matrix(lambda: f64, params: &GenAlphaParams) -> ModeAmplification {
    let GenAlphaParams {
        alpha_m: am,
        alpha_f: af,
        gamma: g,
        tau,
        ..
    } = *params;
    let tl = tau * lambda;
    let d = am + tl * g * af;
    ModeAmplification {
        matrix: [
            [1.0 - tl * g / d, 1.0 - g * (1.0 + tl * af) / d],
            [-tl / d, 1.0 - (1.0 + tl * af) / d],
        ],
        scheme: SchemeKind::Unsplit,
        lambdas: vec![lambda],
    }
}

/// Split-LHS block with `e = Π 1/(1+ηλ_ξ)` and `g = −(τ/α_m) e Σλ_ξ`.
pub fn split_mode_matrix(lambdas: &[f64], params: &GenAlphaParams) -> ModeAmplification {
    let eta = params.eta();
    let (am, af, gm) = (params.alpha_m, params.alpha_f, params.gamma);
    let e: f64 = lambdas.iter().map(|l| 1.0 / (1.0 + eta * l)).product();
    let g = -(params.tau / am) * e * lambdas.iter().sum::<f64>();
    ModeAmplification {
        matrix: [
            [1.0 + gm * g, 1.0 - (gm / am) * e + gm * af * g],
            [g, 1.0 - e / am + af * g],
        ],
        scheme: SchemeKind::SplitLhs,
        lambdas: lambdas.to_vec(),
    }
}

/// Eigenvalue limits of the unsplit block: `τλ → 0` gives `(1, 1 − 1/α_m)`.
pub fn unsplit_small_step_limit(params: &GenAlphaParams) -> (f64, f64) {
    (1.0, 1.0 - 1.0 / params.alpha_m)
}

/// `τλ → ∞` gives `(1 − 1/α_f, 1 − 1/γ)`, both `−ρ∞` for the one-parameter family.
pub fn unsplit_large_step_limit(params: &GenAlphaParams) -> (f64, f64) {
    (1.0 - 1.0 / params.alpha_f, 1.0 - 1.0 / params.gamma)
}

/// Smallest `τ λ_min` used by [`large_step_block`].
pub const LARGE_STEP: f64 = 1e30;

/// Mode block evaluated at `τ λ_min = 1e30`.
///
/// Both τ → ∞ limits are defective (a double eigenvalue with one eigenvector),
/// so eigenvalues approach them like the square root of `1/(τλ)`; evaluating
/// this far out keeps that deviation near `1e-15`.
pub fn large_step_block(scheme: SchemeKind, lambdas: &[f64], params: &GenAlphaParams) -> ModeAmplification {
    let lmin = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
    mode_matrix(scheme, lambdas, &params.with_tau(LARGE_STEP / lmin))
}

/// Worst mode found for one (scheme, τ) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationEntry {
    pub scheme: SchemeKind,
    pub tau: f64,
    pub max_radius: f64,
    pub worst_lambdas: Vec<f64>,
    /// Modes with radius above `1 + RADIUS_TOL`.
    pub unstable_modes: usize,
}

impl CertificationEntry {
    pub fn passed(&self) -> bool {
        self.max_radius <= 1.0 + RADIUS_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub entries: Vec<CertificationEntry>,
    pub n_modes: usize,
    /// Whether `α_m ≥ α_f ≥ 1/2` holds.
    pub condition_holds: bool,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(CertificationEntry::passed)
    }

    pub fn max_radius(&self, scheme: SchemeKind) -> Option<f64> {
        self.entries
            .iter()
            .filter(|e| e.scheme == scheme)
            .map(|e| e.max_radius)
            .reduce(f64::max)
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CertificationEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }
}

/// Scans every combination of per-axis discrete eigenvalues for each scheme and τ.
pub fn certify_stability(
    eigenvalues: &[Vec<f64>],
    params: &GenAlphaParams,
    taus: &[f64],
    schemes: &[SchemeKind],
) -> StabilityReport {
    let combos = eigenvalue_combinations(eigenvalues);
    let mut entries = Vec::new();
    for &scheme in schemes {
        for &tau in taus {
            let p = params.with_tau(tau);
            let mut worst = (f64::NEG_INFINITY, Vec::new());
            let mut unstable = 0;
            for lambdas in &combos {
                let r = mode_matrix(scheme, lambdas, &p).spectral_radius();
                if !(r <= 1.0 + RADIUS_TOL) {
                    unstable += 1;
                }
                if r > worst.0 || r.is_nan() {
                    worst = (r, lambdas.clone());
                }
            }
            entries.push(CertificationEntry {
                scheme,
                tau,
                max_radius: worst.0,
                worst_lambdas: worst.1,
                unstable_modes: unstable,
            });
        }
    }
    StabilityReport {
        entries,
        n_modes: combos.len(),
        condition_holds: params.satisfies_stability_condition(),
    }
}

/// Certification on the actual discrete spectrum of a tensor space.
pub fn certify_space(
    space: &TensorSpace,
    params: &GenAlphaParams,
    taus: &[f64],
    schemes: &[SchemeKind],
) -> Result<StabilityReport> {
    let eigs = space_eigenvalues(space)?;
    Ok(certify_stability(&eigs, params, taus, schemes))
}

/// Per-axis eigenvalues of a tensor space.
pub fn space_eigenvalues(space: &TensorSpace) -> Result<Vec<Vec<f64>>> {
    space
        .stiffness_1d()
        .iter()
        .zip(space.mass_1d())
        .map(|(k, m)| generalized_eig_1d(k, m).map(|d| d.eigenvalues))
        .collect()
}

fn eigenvalue_combinations(eigenvalues: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut combos: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in eigenvalues {
        let mut next = Vec::with_capacity(combos.len() * axis.len());
        for &l in axis {
            for c in &combos {
                let mut v = c.clone();
                v.push(l);
                next.push(v);
            }
        }
        combos = next;
    }
    combos
}

/// Left operator and velocity coupling of a scheme as Kronecker operators.
pub fn scheme_operators(
    space: &TensorSpace,
    scheme: SchemeKind,
    params: &GenAlphaParams,
) -> Result<(KronOperator, KronOperator)> {
    let eta = params.eta();
    let zeta = params.zeta();
    let split = KronOperator::from_term(space.split_term(eta));
    let lhs = match scheme {
        SchemeKind::Unsplit => space.shifted_operator(eta),
        _ => split.clone(),
    };
    let rhs = match scheme {
        SchemeKind::Unsplit | SchemeKind::SplitLhs => space.shifted_operator(zeta),
        SchemeKind::SplitBoth => KronOperator::from_term(space.split_term(zeta)),
        SchemeKind::SplitBothMod => {
            let (am, g) = (params.alpha_m, params.gamma);
            KronOperator::new(space.dims())
                .with(am / g, space.split_term(eta))?
                .with((g - am) / g, space.mass_term())?
        }
    };
    Ok((lhs, rhs))
}

/// Dense amplification matrix on `(U, τV)`, size `2N`.
pub fn dense_amplification(space: &TensorSpace, scheme: SchemeKind, params: &GenAlphaParams) -> Result<DMatrix<f64>> {
    let n = space.n_dofs();
    let (lhs, rhs) = scheme_operators(space, scheme, params)?;
    let l = dense_expand(&lhs)?;
    let r = dense_expand(&rhs)?;
    let k = dense_expand(&space.stiffness_operator())?;
    let lu = l.lu();
    let lk = lu.solve(&k).ok_or(Error::InvalidParams("singular left operator".into()))?;
    let lr = lu.solve(&r).ok_or(Error::InvalidParams("singular left operator".into()))?;
    let (am, g, tau) = (params.alpha_m, params.gamma, params.tau);
    let eye = DMatrix::<f64>::identity(n, n);
    let mut xi = DMatrix::zeros(2 * n, 2 * n);
    xi.view_mut((0, 0), (n, n)).copy_from(&(&eye - &lk * (tau * g / am)));
    xi.view_mut((0, n), (n, n)).copy_from(&(&eye - &lr * (g / am)));
    xi.view_mut((n, 0), (n, n)).copy_from(&(&lk * (-tau / am)));
    xi.view_mut((n, n), (n, n)).copy_from(&(&eye - &lr * (1.0 / am)));
    Ok(xi)
}

/// Outcome of [`verify_similarity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityCheck {
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl SimilarityCheck {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Largest instance accepted by [`verify_similarity`].
pub const SIMILARITY_LIMIT: usize = 400;

/// Conjugates the dense amplification matrix by `blockdiag(⊗P_ξ)` and compares
/// it with the block matrix assembled from the per-mode 2x2 blocks.
pub fn verify_similarity(space: &TensorSpace, scheme: SchemeKind, params: &GenAlphaParams) -> Result<SimilarityCheck> {
    let n = space.n_dofs();
    if n > SIMILARITY_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: SIMILARITY_LIMIT,
        });
    }
    let decomps: Vec<GenEigenDecomp1D> = space
        .stiffness_1d()
        .iter()
        .zip(space.mass_1d())
        .map(|(k, m)| generalized_eig_1d(k, m))
        .collect::<Result<_>>()?;
    let mut p = DMatrix::from_element(1, 1, 1.0);
    for d in &decomps {
        p = d.eigenvectors.kronecker(&p);
    }
    let m = dense_expand(&space.mass_operator())?;
    let p_inv = p.transpose() * m;
    let mut big_p = DMatrix::zeros(2 * n, 2 * n);
    let mut big_p_inv = DMatrix::zeros(2 * n, 2 * n);
    for (dst, src) in [(&mut big_p, &p), (&mut big_p_inv, &p_inv)] {
        dst.view_mut((0, 0), (n, n)).copy_from(src);
        dst.view_mut((n, n), (n, n)).copy_from(src);
    }
    let xi = dense_amplification(space, scheme, params)?;
    let conj = &big_p_inv * xi * &big_p;

    let eigs: Vec<Vec<f64>> = decomps.iter().map(|d| d.eigenvalues.clone()).collect();
    let mut expected = DMatrix::zeros(2 * n, 2 * n);
    for (mode, lambdas) in eigenvalue_combinations(&eigs).iter().enumerate() {
        let blk = mode_matrix(scheme, lambdas, params).matrix;
        expected[(mode, mode)] = blk[0][0];
        expected[(mode, n + mode)] = blk[0][1];
        expected[(n + mode, mode)] = blk[1][0];
        expected[(n + mode, n + mode)] = blk[1][1];
    }
    let max_deviation = (&conj - &expected).amax();
    Ok(SimilarityCheck {
        max_deviation,
        tolerance: 1e-9,
    })
}
