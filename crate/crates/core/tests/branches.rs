use approx::{assert_abs_diff_eq, assert_relative_eq};
use buckspec_core::dispersion::*;
use buckspec_core::special_functions::{bessel_j, bessel_j_prime, bessel_zero};
use buckspec_core::Error;
use proptest::prelude::*;

const J01: f64 = 2.404825557695773;
const J02: f64 = 5.520078110286311;
const J03: f64 = 8.653727912911013;
const J04: f64 = 11.791534439014281;
const J11: f64 = 3.831705970207512;
const J12: f64 = 7.015586669815619;
const J13: f64 = 10.173468135062722;
const J14: f64 = 13.323691936314223;
const J21: f64 = 5.135622301840683;

fn m(k: u32, ell: i32) -> ModeIndex {
    ModeIndex::planar(k, ell)
}

#[test]
fn determinant_vanishes_on_the_diagonal() {
    for k in 0..5 {
        for &kappa in &[0.3, 4.0, 27.0, 130.0] {
            assert!(f_det(m(k, 1), kappa, kappa.sqrt()).unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn determinant_vanishes_at_first_radial_crossing() {
    assert!(f_det(m(0, 1), J01 * J02, J02).unwrap().abs() < 1e-6);
}

#[test]
fn determinant_matches_independent_raised_form() {
    let (kappa, alpha) = (1.0, 3.90);
    let beta = kappa / alpha;
    let j = |nu, x| bessel_j(nu, x).unwrap();
    let other = alpha * j(0.0, beta) * j(1.0, alpha) - beta * j(0.0, alpha) * j(1.0, beta);
    assert_abs_diff_eq!(f_det(m(0, 1), kappa, alpha).unwrap(), other, epsilon = 1e-12);
}

#[test]
fn h_functions_near_origin() {
    assert!(h_tilde(m(0, 0), 1e-8).unwrap().abs() < 1e-14);
    for k in 0..4 {
        assert_abs_diff_eq!(h_aux(m(k, 0), 1e-6).unwrap(), k as f64, epsilon = 1e-6);
    }
    assert!(h_tilde(m(1, 0), 3.0).unwrap() > h_tilde(m(1, 0), 2.0).unwrap());
}

#[test]
fn coincident_branch_determinant_values() {
    assert!(d_det(m(0, 0), 1.0).unwrap() < 0.0);
    let dj = bessel_j_prime(2.0, J21).unwrap();
    assert_relative_eq!(d_det(m(2, 0), J21).unwrap(), -J21 * dj * dj, max_relative = 1e-10);
    assert_abs_diff_eq!(d_det(m(1, 0), 0.5).unwrap(), -h_tilde(m(1, 0), 0.5).unwrap() / 0.5, epsilon = 1e-12);
}

#[test]
fn brackets() {
    let (lo, hi) = bracket_alpha(m(0, 1), 1.0).unwrap();
    assert_abs_diff_eq!(lo, J01, epsilon = 1e-13);
    assert_abs_diff_eq!(hi, J02, epsilon = 1e-13);
    assert_abs_diff_eq!(lo, 2.4048, epsilon = 5e-4);
    assert_abs_diff_eq!(hi, 5.52008, epsilon = 5e-4);

    let (lo, hi) = bracket_alpha(m(0, 2), 30.0).unwrap();
    assert_abs_diff_eq!(lo, J03, epsilon = 1e-13);
    assert_abs_diff_eq!(hi, J04, epsilon = 1e-13);
    assert_abs_diff_eq!(J01 * J03, 20.8107, epsilon = 5e-4);
    assert_abs_diff_eq!(J02 * J04, 65.0902, epsilon = 5e-4);

    let (lo, hi) = bracket_alpha(m(1, 1), 100.0).unwrap();
    assert_abs_diff_eq!(lo, J13, epsilon = 1e-13);
    assert_abs_diff_eq!(hi, J14, epsilon = 1e-13);
    assert_abs_diff_eq!(lo, 10.173468, epsilon = 5e-4);
    assert_abs_diff_eq!(hi, 13.32369, epsilon = 5e-4);
}

#[test]
fn bracket_refuses_product_points() {
    match bracket_alpha(m(0, 1), J01 * J02) {
        Err(Error::DegenerateKappa { label, .. }) => assert_eq!(label, "j(0,1)*j(0,2)"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn root_near_zero_kappa() {
    assert_abs_diff_eq!(alpha_root(m(0, 1), 1e-6).unwrap().alpha, 3.8317, epsilon = 1e-3);
    let r = alpha_root(m(0, 1), 0.0).unwrap();
    assert_abs_diff_eq!(r.alpha, J11, epsilon = 1e-13);
    assert!(matches!(alpha_root(m(0, -1), 0.0), Err(Error::InvalidMode(_))));
}

#[test]
fn root_at_degree_one_crossing() {
    let r = alpha_root(m(1, 1), J11 * J12).unwrap();
    assert_abs_diff_eq!(r.alpha, J12, epsilon = 1e-8);
    assert!(r.degenerate);
    // the six-digit value is off the exact product by ~1e-6
    assert_abs_diff_eq!(alpha_root(m(1, 1), 26.88166).unwrap().alpha, 7.0155, epsilon = 5e-4);
}

#[test]
fn straddle_and_snap_agree() {
    for (k, kappa, want) in [(0, J01 * J02, J02), (1, J11 * J12, J12), (0, J02 * J03, J03)] {
        let s = alpha_root_with(m(k, 1), kappa, CrossingPolicy::Straddle).unwrap();
        assert!(s.degenerate);
        assert_ne!(s.alpha, want);
        assert_abs_diff_eq!(s.alpha, want, epsilon = 1e-8);
    }
}

#[test]
fn lower_branch_is_reciprocal() {
    let up = alpha_root(m(0, 1), 4.0).unwrap().alpha;
    let down = alpha_root(m(0, -1), 4.0).unwrap().alpha;
    assert_abs_diff_eq!(down, 4.0 / up, epsilon = 1e-14);
    assert_abs_diff_eq!(alpha_root(m(3, 0), 9.0).unwrap().alpha, 3.0, epsilon = 1e-15);
}

#[test]
fn root_matches_sign_scan() {
    let kappa = 4.0;
    let f = |a: f64| f_det(m(0, 1), kappa, a).unwrap();
    let (lo, hi) = (2.0, 5.52008);
    let n = 100_000;
    let h = (hi - lo) / n as f64;
    let mut changes = Vec::new();
    for i in 1..n {
        let (a, b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
        if f(a).signum() != f(b).signum() {
            changes.push((a, b));
        }
    }
    assert_eq!(changes.len(), 1);
    let (mut a, mut b) = changes[0];
    let fa = f(a);
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if f(mid).signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    assert_abs_diff_eq!(alpha_root(m(0, 1), kappa).unwrap().alpha, 0.5 * (a + b), epsilon = 1e-12);
}

#[test]
fn zero_kappa_eigenvalues() {
    assert_abs_diff_eq!(eigenvalue(m(0, 1), 0.0).unwrap(), 14.682, epsilon = 1e-3);
    assert_relative_eq!(eigenvalue(m(0, 1), 0.0).unwrap(), 14.681970642123893, max_relative = 1e-13);
    let three = |k| ModeIndex::new(k, 1, 3).unwrap();
    assert_relative_eq!(eigenvalue(three(0), 0.0).unwrap(), 20.19072855642663, max_relative = 1e-13);
    assert_relative_eq!(eigenvalue(three(1), 0.0).unwrap(), 33.21746191426837, max_relative = 1e-13);
    let j = bessel_zero(2.5, 1).unwrap();
    assert_relative_eq!(eigenvalue(three(1), 0.0).unwrap(), j * j, max_relative = 1e-14);
    assert!(eigenvalue(m(0, 0), 1.0).is_err());
}

#[test]
fn crossing_sets() {
    let set = crossing_kappas(0, 1, 2, 2).unwrap();
    let k = set.kappas();
    assert_eq!(k.len(), 4);
    assert_abs_diff_eq!(k[0], 13.2747, epsilon = 5e-4);
    assert_abs_diff_eq!(k[1], 26.88166, epsilon = 5e-4);
    assert_abs_diff_eq!(k[2], 47.7692540244337, epsilon = 1e-9);
    assert_abs_diff_eq!(k[3], 71.372847, epsilon = 5e-4);
    assert_eq!(set.points[1].label, "j(1,1)*j(1,2)");
    assert_eq!(set.points[1].family, CrossingFamily::NextOrder);

    let k = crossing_kappas(0, 2, 1, 2).unwrap().kappas();
    assert_abs_diff_eq!(k[0], 20.8107, epsilon = 5e-4);
    assert_abs_diff_eq!(k[1], 38.9817, epsilon = 5e-4);

    for (kk, ell) in [(0u32, 1usize), (1, 1), (0, 2), (2, 1)] {
        for kappa in crossing_kappas(kk, ell, 3, 2).unwrap().kappas() {
            let a = alpha_root(m(kk, ell as i32), kappa).unwrap().alpha;
            let b = alpha_root(m(kk + 1, ell as i32), kappa).unwrap().alpha;
            assert!((a - b).abs() < 1e-8, "k = {kk}, l = {ell}, kappa = {kappa}: {a} vs {b}");
        }
    }
}

#[test]
fn crossing_slope_values() {
    let (lo, hi) = crossing_slopes(0, 1, 2).unwrap();
    assert_abs_diff_eq!(lo, 0.20791528865781187, epsilon = 1e-14);
    assert_abs_diff_eq!(hi, 0.06633187567378853, epsilon = 1e-14);
    assert_abs_diff_eq!(lo, 0.20792, epsilon = 1e-4);
    assert_abs_diff_eq!(hi, 0.06628, epsilon = 1e-4);
    let kappa = J01 * J02;
    let h = 1e-5;
    let fd =
        |k| (alpha_root(m(k, 1), kappa + h).unwrap().alpha - alpha_root(m(k, 1), kappa - h).unwrap().alpha) / (2.0 * h);
    assert_abs_diff_eq!(fd(0), lo, epsilon = 1e-4);
    assert_abs_diff_eq!(fd(1), hi, epsilon = 1e-4);
    for k in 0..=4 {
        for n in 1..=5 {
            let (a, b) = crossing_slopes(k, n, 2).unwrap();
            assert!(a > b);
        }
    }
}

#[test]
fn first_eigenvalue_attaining_sets() {
    assert_eq!(first_eigenvalue(1.0, 2).unwrap().attaining, vec![m(0, 1)]);
    assert_eq!(first_eigenvalue(20.0, 2).unwrap().attaining, vec![m(1, 1)]);
    let triple = first_eigenvalue(J11 * J12, 2).unwrap();
    assert_eq!(triple.attaining, vec![m(0, 1), m(1, 1), m(2, 1)]);
    assert_abs_diff_eq!(triple.alpha, J12, epsilon = 1e-12);
    assert_eq!(first_eigenvalue(J01 * J02, 2).unwrap().attaining, vec![m(0, 1), m(1, 1)]);
}

#[test]
fn invalid_modes() {
    assert!(ModeIndex::new(0, 1, 1).is_err());
    assert!(ModeIndex::new(61, 1, 2).is_err());
    assert_eq!(m(2, -3).to_string(), "(2,-3)");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn antisymmetry(k in 0u32..6, kappa in 0.01f64..200.0, alpha in 0.3f64..40.0) {
        let a = f_det(m(k, 1), kappa, alpha).unwrap();
        let b = f_det(m(k, 1), kappa, kappa / alpha).unwrap();
        prop_assert!((a + b).abs() < 1e-10 * a.abs().max(1.0));
    }

    #[test]
    fn forms_agree(k in 0u32..6, kappa in 0.01f64..200.0, alpha in 0.3f64..40.0) {
        let scale = f_det_scale(m(k, 1), kappa, alpha).unwrap();
        let a = f_det(m(k, 1), kappa, alpha).unwrap();
        prop_assert!((a - f_det_raised(m(k, 1), kappa, alpha).unwrap()).abs() < 1e-12 * scale);
        let next = f_det(m(k + 1, 1), kappa, alpha).unwrap();
        let scale = f_det_scale(m(k + 1, 1), kappa, alpha).unwrap();
        prop_assert!((next - f_det_next_degree(m(k, 1), kappa, alpha).unwrap()).abs() < 1e-12 * scale);
    }

    #[test]
    fn step_two_identity(k in 0u32..6, kappa in 0.01f64..200.0, alpha in 0.3f64..40.0) {
        let gap = f_det(m(k + 2, 1), kappa, alpha).unwrap() - f_det(m(k, 1), kappa, alpha).unwrap();
        prop_assert!((gap - degree_step_two_gap(m(k, 1), kappa, alpha).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn root_properties(k in 0u32..5, ell in 1i32..5, kappa in 1e-4f64..300.0) {
        let r = alpha_root(m(k, ell), kappa).unwrap();
        prop_assert!(r.alpha > kappa.sqrt());
        if !r.degenerate {
            prop_assert!(r.bracket.0 < r.alpha && r.alpha < r.bracket.1);
        }
        prop_assert!(r.residual <= 1e-10 * f_det_scale(m(k, ell), kappa, r.alpha).unwrap());
        let down = alpha_root(m(k, -ell), kappa).unwrap();
        prop_assert!(down.alpha < kappa.sqrt());
        prop_assert!((down.alpha * r.alpha - kappa).abs() < 1e-12 * kappa);
        prop_assert!(r.lambda() >= 2.0 * kappa);
    }

    #[test]
    fn increasing_and_g_decreasing(k in 0u32..3, ell in 1i32..4, a in 0.01f64..140.0, frac in 1e-6f64..0.5) {
        let b = a * (1.0 + frac);
        let (ra, rb) = (alpha_root(m(k, ell), a).unwrap().alpha, alpha_root(m(k, ell), b).unwrap().alpha);
        prop_assert!(ra < rb);
        prop_assert!(ra * ra / a > rb * rb / b);
    }

    #[test]
    fn first_eigenvalue_is_brute_minimum(kappa in 1e-3f64..=140.0) {
        let fe = first_eigenvalue(kappa, 2).unwrap();
        let brute = (0..=6).map(|k| alpha_root(m(k, 1), kappa).unwrap().alpha).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(fe.alpha, brute);
        prop_assert!(fe.lambda1 >= 2.0 * kappa);
    }
}
