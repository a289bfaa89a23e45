use approx::assert_abs_diff_eq;
use buckspec_core::dispersion::{alpha_root, ModeIndex};
use buckspec_core::eigenmodes::*;
use buckspec_core::special_functions::{bessel_j, bessel_zero};
use buckspec_core::verify::factored_equation_residual;
use buckspec_core::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn m(k: u32, ell: i32) -> ModeIndex {
    ModeIndex::planar(k, ell)
}

/// Plain power series for J_0, independent of the library.
fn series_j0(x: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    for j in 1..60 {
        term *= -(x * x / 4.0) / (j * j) as f64;
        sum += term;
    }
    sum
}

#[test]
fn coefficients_satisfy_value_row() {
    let root = alpha_root(m(0, 1), 1.0).unwrap();
    let (c, d) = mode_coefficients(m(0, 1), 1.0, &root).unwrap();
    let row = c * bessel_j(0.0, root.alpha).unwrap() + d * bessel_j(0.0, root.beta()).unwrap();
    assert!(row.abs() < 1e-10);
}

#[test]
fn degree_one_coefficients_positive() {
    let root = alpha_root(m(1, 1), 20.0).unwrap();
    let (c, d) = mode_coefficients(m(1, 1), 20.0, &root).unwrap();
    assert!(c > 0.0 && d > 0.0, "{c} {d}");
}

#[test]
fn coefficients_parallel_to_cofactor_null_vector() {
    let root = alpha_root(m(0, 1), 4.0).unwrap();
    let (c, d) = mode_coefficients(m(0, 1), 4.0, &root).unwrap();
    // null vector of rows (J0(α), J0(β)): (J0(β), −J0(α))
    let (u, v) = (bessel_j(0.0, root.beta()).unwrap(), -bessel_j(0.0, root.alpha).unwrap());
    let cross = c * v - d * u;
    assert!(cross.abs() < 1e-10 * (c.hypot(d) * u.hypot(v)));
}

#[test]
fn coefficients_reject_foreign_roots() {
    let root = alpha_root(m(0, 1), 4.0).unwrap();
    assert!(matches!(mode_coefficients(m(1, 1), 4.0, &root), Err(Error::InvalidMode(_))));
}

#[test]
fn radial_values() {
    let em = EigenMode::new(m(1, 1), 20.0).unwrap();
    assert_eq!(radial_eval(&em, 0.0).unwrap(), 0.0);
    let em = EigenMode::new(m(0, 1), 1.0).unwrap();
    assert!(radial_eval(&em, 1.0).unwrap().abs() < 1e-9);
    assert_abs_diff_eq!(radial_eval(&em, 0.0).unwrap(), 1.0, epsilon = 1e-15);
    assert!(radial_eval(&em, 1.5).is_err());

    let em = EigenMode::new(m(0, 1), 5.0).unwrap();
    let want = em.c * series_j0(0.5 * em.alpha) + em.d * series_j0(0.5 * em.beta());
    assert_abs_diff_eq!(radial_eval(&em, 0.5).unwrap(), want, epsilon = 1e-12);
}

#[test]
fn angular_dependence() {
    let em = EigenMode::new(m(0, 1), 7.0).unwrap();
    let a = eval_eigenfunction(&em, 0.3, 0.0, (0.4, -2.0)).unwrap();
    let b = eval_eigenfunction(&em, 0.3, 2.1, (0.4, -2.0)).unwrap();
    assert_abs_diff_eq!(a, b, epsilon = 1e-15);

    let em = EigenMode::new(m(1, 1), 20.0).unwrap();
    for i in 0..=10 {
        let r = i as f64 / 10.0;
        assert!(eval_eigenfunction(&em, r, PI / 2.0, (1.0, 0.0)).unwrap().abs() < 1e-15);
    }
    assert_abs_diff_eq!(
        eval_eigenfunction(&em, 0.5, 0.0, (1.0, 0.0)).unwrap(),
        radial_eval(&em, 0.5).unwrap(),
        epsilon = 1e-15
    );
    let em3 = EigenMode::new(ModeIndex::new(2, 1, 3).unwrap(), 5.0).unwrap();
    assert!(matches!(eval_eigenfunction(&em3, 0.5, 0.0, (1.0, 0.0)), Err(Error::UnsupportedAngularDegree { .. })));
}

#[test]
fn perturbed_root_breaks_slope_condition() {
    let root = alpha_root(m(0, 1), 10.0).unwrap();
    let em = EigenMode::with_alpha(m(0, 1), 10.0, root.alpha + 1e-3).unwrap();
    // one row is solved exactly; the other exposes the wrong root
    let (value, slope) = boundary_residual(&em).unwrap();
    assert!(value.min(slope) < 1e-12);
    assert!(value.max(slope) > 1e-5, "{value} {slope}");
}

#[test]
fn zero_kappa_closed_form_basis() {
    // −J_k(j) r^k + J_k(j r) with j = j_{k+1,ℓ}
    for k in 0..=3u32 {
        for ell in 1..=3 {
            let em = EigenMode::new(m(k, ell), 0.0).unwrap();
            let (v, d) = boundary_residual(&em).unwrap();
            assert!(v < 1e-9 && d < 1e-9);
            let j = bessel_zero(k as f64 + 1.0, ell as usize).unwrap();
            let basis =
                |r: f64| -bessel_j(k as f64, j).unwrap() * r.powi(k as i32) + bessel_j(k as f64, j * r).unwrap();
            let ratio = radial_eval(&em, 0.37).unwrap() / basis(0.37);
            for i in 1..20 {
                let r = i as f64 / 20.0;
                assert_abs_diff_eq!(radial_eval(&em, r).unwrap(), ratio * basis(r), epsilon = 1e-12);
            }
        }
    }
}

#[test]
fn profile_grid_and_positivity() {
    let em = EigenMode::new(m(0, 1), 1.0).unwrap();
    let p = radial_profile(&em, 101).unwrap();
    assert_eq!(p.grid[0], 0.0);
    assert_eq!(*p.grid.last().unwrap(), 1.0);
    assert!(p.grid.windows(2).all(|w| w[0] < w[1]));
    let n = p.values.len();
    assert!(p.values[..n - 1].iter().all(|&v| v > 0.0 && v <= 1.0));
    assert!(p.values[n - 1].abs() < 1e-9 && p.derivatives[n - 1].abs() < 1e-9);
}

#[test]
fn profile_sign_changes_at_kappa_50() {
    // 50 lies in (j01 j02·…): the radial branch has two interior zeros here
    let em = EigenMode::new(m(0, 1), 50.0).unwrap();
    let p = radial_profile(&em, 201).unwrap();
    let n = p.values.len();
    let changes = p.values[1..n - 1].windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    assert_eq!(changes, 2);
}

#[test]
fn coincident_branch_never_vanishes() {
    for k in 0..4 {
        for i in 1..200 {
            let kappa = i as f64 * 0.7;
            assert!(coincident_branch_determinant(m(k, 1), kappa).unwrap() != 0.0);
        }
    }
}

#[test]
fn three_dimensional_modes_are_finite_at_origin() {
    let em = EigenMode::new(ModeIndex::new(0, 1, 3).unwrap(), 3.0).unwrap();
    let at0 = radial_eval(&em, 0.0).unwrap();
    assert_abs_diff_eq!(at0, radial_eval(&em, 1e-7).unwrap(), epsilon = 1e-9);
    let (v, d) = boundary_residual(&em).unwrap();
    assert!(v < 1e-9 && d < 1e-9);
}

#[test]
fn factored_equation_holds_for_sample_modes() {
    for &(k, ell, kappa) in &[(0, 1, 0.0), (1, 2, 12.0), (3, 3, 130.0), (2, 1, 47.0)] {
        let em = EigenMode::new(m(k, ell), kappa).unwrap();
        let res = factored_equation_residual(&em, 20).unwrap();
        assert!(res < 1e-4, "({k},{ell}) at {kappa}: {res}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clamped_and_normalized(k in 0u32..=3, ell in 1i32..=3, kappa in 0.0f64..=140.0) {
        let em = EigenMode::new(m(k, ell), kappa).unwrap();
        let (v, d) = boundary_residual(&em).unwrap();
        prop_assert!(v < 1e-9 && d < 1e-9);
        let p = radial_profile(&em, 101).unwrap();
        let peak = p.values.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        prop_assert!(peak <= 1.0 + 1e-12 && peak > 0.99);
        let first = p.values.iter().skip(1).find(|v| v.abs() > 1e-12).unwrap();
        prop_assert!(*first > 0.0);
        prop_assert!((em.lambda - (em.alpha.powi(2) + (kappa / em.alpha).powi(2))).abs() < 1e-9 * em.lambda);
    }
}
