mod common;

use common::{element_loop_2d, kron_fast_first, max_abs_diff};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use sepalpha::kronops::{dense_expand, kron_matvec, kron_solve, KronOperator, TensorField, TensorSpace};
use sepalpha::spectral::{mode_matrix, RADIUS_TOL};
use sepalpha::splines::BasisSpec1D;
use sepalpha::timestepper::{derive_params, SchemeKind};

fn space(d: usize, p: usize, k: usize, n: usize) -> TensorSpace {
    TensorSpace::isotropic(d, BasisSpec1D::new(p, k, n).unwrap()).unwrap()
}

#[test]
fn element_loop_matches_kronecker_forms() {
    for (p, k) in [(1, 0), (2, 0), (2, 1), (3, 2)] {
        for n in [2, 4] {
            let s = space(2, p, k, n);
            let (m, kk) = element_loop_2d(&s.specs()[0]);
            assert!(max_abs_diff(&m, &dense_expand(&s.mass_operator()).unwrap()) < 1e-13);
            assert!(max_abs_diff(&kk, &dense_expand(&s.stiffness_operator()).unwrap()) < 1e-13);
        }
    }
}

#[test]
fn splitting_defect_is_the_cross_term() {
    let s = space(2, 2, 1, 5);
    let kx = s.stiffness_1d()[0].to_dense();
    let ky = s.stiffness_1d()[1].to_dense();
    let cross = kron_fast_first(&[&kx, &ky]);
    for eta in [1e-3, 0.2, 3.0] {
        let split = dense_expand(&KronOperator::from_term(s.split_term(eta))).unwrap();
        let full = dense_expand(&s.shifted_operator(eta)).unwrap();
        let defect = dense_expand(&s.splitting_defect(eta)).unwrap();
        let scale = split.amax();
        assert!(max_abs_diff(&(split - full), &(&cross * (eta * eta))) < 1e-14 * scale);
        assert!(max_abs_diff(&defect, &(&cross * (eta * eta))) < 1e-14 * scale);
    }
}

#[test]
fn three_dimensional_defect_has_pairwise_and_triple_terms() {
    let s = space(3, 2, 1, 3);
    let m: Vec<DMatrix<f64>> = s.mass_1d().iter().map(|b| b.to_dense()).collect();
    let k: Vec<DMatrix<f64>> = s.stiffness_1d().iter().map(|b| b.to_dense()).collect();
    let eta = 0.3;
    let expect = (kron_fast_first(&[&k[0], &k[1], &m[2]])
        + kron_fast_first(&[&k[0], &m[1], &k[2]])
        + kron_fast_first(&[&m[0], &k[1], &k[2]]))
        * (eta * eta)
        + kron_fast_first(&[&k[0], &k[1], &k[2]]) * eta.powi(3);
    let split = dense_expand(&KronOperator::from_term(s.split_term(eta))).unwrap();
    let full = dense_expand(&s.shifted_operator(eta)).unwrap();
    assert!(max_abs_diff(&(split - full), &expect) < 1e-13 * expect.amax());
}

#[test]
fn anisotropic_spaces_keep_axis_order() {
    let s = TensorSpace::new(vec![
        BasisSpec1D::new(1, 0, 3).unwrap(),
        BasisSpec1D::new(2, 1, 4).unwrap(),
        BasisSpec1D::new(3, 1, 2).unwrap(),
    ])
    .unwrap();
    assert_eq!(s.dims(), vec![2, 4, 4]);
    let m: Vec<DMatrix<f64>> = s.mass_1d().iter().map(|b| b.to_dense()).collect();
    let dense = kron_fast_first(&[&m[0], &m[1], &m[2]]);
    assert!(max_abs_diff(&dense, &dense_expand(&s.mass_operator()).unwrap()) < 1e-15);
}

fn spaces() -> impl Strategy<Value = TensorSpace> {
    (1usize..=3, 1usize..=3, 0usize..3, 1usize..=4).prop_map(|(d, p, kk, n)| {
        let k = kk.min(p - 1);
        let n = if p == 1 { n.max(2) } else { n };
        space(d, p, k, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matvec_matches_dense(s in spaces(), seed in 0u64..1000, eta in 0.0f64..2.0) {
        let op = s.shifted_operator(eta);
        let n = s.n_dofs();
        let u: Vec<f64> = (0..n).map(|i| (((i as u64 + 1) * (seed + 7)) % 13) as f64 - 6.0).collect();
        let fast = kron_matvec(&op, &TensorField::from_vec(&s.dims(), u.clone()).unwrap()).unwrap();
        let slow = dense_expand(&op).unwrap() * DVector::from_vec(u);
        for (a, b) in fast.as_slice().iter().zip(slow.iter()) {
            prop_assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn kron_solve_inverts_the_split_operator(s in spaces(), eta in 0.0f64..5.0) {
        let term = s.split_term(eta);
        let n = s.n_dofs();
        let rhs = TensorField::from_vec(&s.dims(), (0..n).map(|i| (i as f64 * 0.37).cos()).collect()).unwrap();
        let x = kron_solve(&term, &rhs).unwrap();
        let back = KronOperator::from_term(term).apply(&x).unwrap();
        for (a, b) in back.as_slice().iter().zip(rhs.as_slice()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn family_members_are_stable_for_positive_spectra(
        rho in 0.0f64..=1.0,
        log_tau in -6.0f64..6.0,
        lx in 1.0f64..1e6,
        ly in 1.0f64..1e6,
    ) {
        let params = derive_params(rho, 10f64.powf(log_tau)).unwrap();
        for scheme in [SchemeKind::Unsplit, SchemeKind::SplitLhs, SchemeKind::SplitBothMod] {
            let r = mode_matrix(scheme, &[lx, ly], &params).spectral_radius();
            prop_assert!(r <= 1.0 + RADIUS_TOL, "{} radius {}", scheme, r);
        }
    }
}
