//! Numerical checks of the identities and structural properties the solver
//! relies on. Each check samples deterministically and reports pass/fail
//! with a short measurement.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dd::DoubleDouble;
use crate::dispersion::{
    alpha_root, alpha_root_with, crossing_kappas, crossing_slopes, d_det, degree_step_two_gap, eigenvalue, f_det,
    f_det_next_degree, f_det_raised, f_det_scale, first_eigenvalue, h_aux, h_tilde, CrossingFamily, CrossingPolicy,
    ModeIndex,
};
use crate::eigenmodes::{boundary_residual, radial_eval, radial_eval_extended, radial_profile, EigenMode};
use crate::error::Result;
use crate::nodal::{classify_regime, count_zeros, last_arch_sign, regime_boundaries, verify_sign_alternation, Regime};
use crate::special_functions::{bessel_j, bessel_j_leading_asymptotic, bessel_j_prime, bessel_zero, zero_table};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    fn pick(self, fast: usize, full: usize) -> usize {
        match self {
            Level::Fast => fast,
            Level::Full => full,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub type DeterminantFn = fn(ModeIndex, f64, f64) -> Result<f64>;

/// A configured run of all checks. The determinant is injectable so that
/// a deliberately broken one can be shown to fail the suite.
pub struct Suite {
    level: Level,
    f_det: DeterminantFn,
    seed: u64,
}

type CheckFn = fn(&Suite, &mut ChaCha8Rng) -> Result<(bool, String)>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("bessel values at the origin", origin_values),
    ("half-order closed forms", half_order_closed_forms),
    ("three-term recurrence", three_term_recurrence),
    ("derivative identities agree", derivative_identities),
    ("derivative against finite differences", derivative_finite_difference),
    ("order-zero derivative is -J1", order_zero_derivative),
    ("bessel differential equation residual", bessel_ode_residual),
    ("large-argument leading term", large_argument_form),
    ("small-argument leading term", small_argument_form),
    ("zeros interlace across consecutive orders", zeros_interlace),
    ("zeros of orders k and k+2 interlace", zeros_interlace_step_two),
    ("zeros are simple", zeros_simple),
    ("first zero of J_3/2 solves tan x = x", tan_oracle),
    ("determinant antisymmetry under alpha -> kappa/alpha", determinant_antisymmetry),
    ("determinant agrees with its J_(nu+1) form", determinant_raised_form),
    ("next-degree determinant from orders nu and nu+1", determinant_next_degree),
    ("degree step-two determinant identity", determinant_step_two),
    ("solved roots annihilate the determinant", roots_annihilate),
    ("H-tilde derivative equals 2 z J^2", h_tilde_derivative),
    ("H decreases between consecutive zeros", h_decreasing),
    ("coincident-branch determinant is negative", coincident_negative),
    ("branches increase with kappa", branches_increase),
    ("alpha^2/kappa decreases along branches", alpha_square_over_kappa),
    ("branch k lies below branch k+2", branch_k_below_k_plus_two),
    ("small-kappa limit is j_(nu+1,l)", small_kappa_limit),
    ("branches grow without bound", large_kappa_growth),
    ("roots at crossing products are Bessel zeros", crossing_roots),
    ("crossing slopes match finite differences", crossing_slope_check),
    ("consecutive degrees share no root off crossings", no_common_roots),
    ("first eigenvalue is the minimum over degrees", first_eigenvalue_minimum),
    ("first eigenvalue is at least 2 kappa", first_eigenvalue_lower_bound),
    ("clamped boundary conditions hold", clamped_boundary),
    ("factored fourth-order equation residual", factored_pde_residual),
    ("zero-kappa modes are the small-kappa limit", zero_kappa_modes),
    ("first radial mode decreases before the first crossing", radial_mode_decreasing),
    ("first-branch profiles positive before the first product", first_branch_positive),
    ("interior zero counts match the interval prediction", zero_count_prediction),
    ("profiles alternate sign at Bessel checkpoints", sign_alternation),
    ("sign of the last arch", last_arch),
    ("nodal regions follow from zero counts", nodal_region_arithmetic),
    ("regime boundaries are the crossing products", regime_boundaries_are_products),
    ("multiplicity at first-eigenvalue crossings", crossing_multiplicity),
    ("three-dimensional spectrum at kappa 0", three_dim_zero_kappa),
    ("three-dimensional regime boundaries", three_dim_boundaries),
];

impl Suite {
    pub fn new(level: Level) -> Self {
        Self { level, f_det, seed: 0x5eed_cafe }
    }

    pub fn with_determinant(mut self, f: DeterminantFn) -> Self {
        self.f_det = f;
        self
    }

    pub fn check_names() -> Vec<&'static str> {
        CHECKS.iter().map(|(n, _)| *n).collect()
    }

    pub fn run(&self) -> Vec<CheckResult> {
        CHECKS
            .iter()
            .enumerate()
            .map(|(i, (name, check))| {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(i as u64));
                let start = Instant::now();
                let (passed, detail) = match check(self, &mut rng) {
                    Ok(r) => r,
                    Err(e) => (false, format!("error: {e}")),
                };
                CheckResult { name, passed, detail, seconds: start.elapsed().as_secs_f64() }
            })
            .collect()
    }
}

fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn within(err: f64, tol: f64) -> (bool, String) {
    (err < tol, format!("max error {err:.3e} (tolerance {tol:.0e})"))
}

fn planar(k: u32, ell: i32) -> ModeIndex {
    ModeIndex::planar(k, ell)
}

fn origin_values(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let ok = bessel_j(0.0, 0.0)? == 1.0 && bessel_j(1.0, 0.0)? == 0.0 && bessel_j(2.5, 0.0)? == 0.0;
    Ok((ok, "J_0(0) = 1, J_nu(0) = 0 otherwise".into()))
}

fn half_order_closed_forms(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(200, 1000) {
        let x: f64 = rng.gen_range(0.01..200.0);
        let pre = (2.0 / (PI * x)).sqrt();
        err = err.max((bessel_j(0.5, x)? - pre * x.sin()).abs());
        err = err.max((bessel_j(1.5, x)? - pre * (x.sin() / x - x.cos())).abs());
    }
    Ok(within(err, 1e-12))
}

fn sample_order_arg(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (rng.gen_range(1.0..=10.0), rng.gen_range(1e-3..=50.0))
}

fn three_term_recurrence(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(300, 1000) {
        let (nu, z) = sample_order_arg(rng);
        let r = nu * bessel_j(nu, z)? - 0.5 * z * (bessel_j(nu - 1.0, z)? + bessel_j(nu + 1.0, z)?);
        err = err.max(r.abs());
    }
    Ok(within(err, 1e-10))
}

fn derivative_identities(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(300, 1000) {
        let (nu, z) = sample_order_arg(rng);
        let lowered = bessel_j(nu - 1.0, z)? - nu / z * bessel_j(nu, z)?;
        err = err.max((lowered - bessel_j_prime(nu, z)?).abs());
    }
    Ok(within(err, 1e-10))
}

fn derivative_finite_difference(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    let h = 1e-5;
    for _ in 0..s.level.pick(200, 1000) {
        let nu: f64 = rng.gen_range(0.0..=10.0);
        let z: f64 = rng.gen_range(0.5..=50.0);
        let fd = (bessel_j(nu, z + h)? - bessel_j(nu, z - h)?) / (2.0 * h);
        err = err.max((fd - bessel_j_prime(nu, z)?).abs());
    }
    Ok(within(err, 1e-8))
}

fn order_zero_derivative(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(200, 1000) {
        let z: f64 = rng.gen_range(0.0..=50.0);
        err = err.max((bessel_j_prime(0.0, z)? + bessel_j(1.0, z)?).abs());
    }
    Ok(within(err, 1e-10))
}

fn bessel_ode_residual(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(300, 1000) {
        let nu: f64 = rng.gen_range(0.0..=10.0);
        let z: f64 = rng.gen_range(1e-2..=50.0);
        let j = bessel_j(nu, z)?;
        let dj = bessel_j_prime(nu, z)?;
        // J'' from differentiating J' = −J_{ν+1} + (ν/z) J_ν
        let dj1 = bessel_j_prime(nu + 1.0, z)?;
        let ddj = -dj1 - nu / (z * z) * j + nu / z * dj;
        err = err.max((z * z * ddj + z * dj + (z * z - nu * nu) * j).abs());
    }
    Ok(within(err, 1e-10))
}

fn large_argument_form(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    // the gap to the leading term shrinks like z^{-3/2}
    let mut ratios = Vec::new();
    for &nu in &[0.0, 0.5, 1.0, 2.0, 3.5] {
        let a = (bessel_j(nu, 100.0)? - bessel_j_leading_asymptotic(nu, 100.0)).abs();
        let b = (bessel_j(nu, 400.0)? - bessel_j_leading_asymptotic(nu, 400.0)).abs();
        ratios.push(b.max(a * 1e-3));
        if b > 1e-3 {
            return Ok((false, format!("nu = {nu}: gap {b:.3e} at z = 400")));
        }
    }
    Ok((true, format!("largest gap at z = 400: {:.3e}", worst(ratios))))
}

fn small_argument_form(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for &nu in &[0.0, 0.5, 1.0, 2.5, 7.0, 20.0] {
        let z: f64 = 1e-4;
        let lead = (0.5 * z).powf(nu) / crate::gamma::gamma(nu + 1.0);
        err = err.max((bessel_j(nu, z)? / lead - 1.0).abs());
    }
    Ok(within(err, 1e-8))
}

fn interlace(lo: &[f64], hi: &[f64]) -> bool {
    lo.iter().zip(hi).zip(lo.iter().skip(1)).all(|((a, b), c)| a < b && b < c)
}

fn zeros_interlace(s: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let count = s.level.pick(30, 30);
    let orders = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 0.5, 1.5, 2.5];
    for &nu in &orders {
        let a = zero_table(nu, count + 1)?;
        let b = zero_table(nu + 1.0, count)?;
        if !interlace(&a.zeros, &b.zeros) {
            return Ok((false, format!("order {nu} and {} do not interlace", nu + 1.0)));
        }
    }
    Ok((true, format!("{} orders, {count} zeros each", orders.len())))
}

fn zeros_interlace_step_two(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    for k in 0..=4 {
        let a = zero_table(k as f64, 21)?;
        let b = zero_table(k as f64 + 2.0, 20)?;
        if !interlace(&a.zeros, &b.zeros) {
            return Ok((false, format!("orders {k} and {} do not interlace", k + 2)));
        }
    }
    Ok((true, "k <= 4, l <= 20".into()))
}

fn zeros_simple(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut least = f64::INFINITY;
    for &nu in &[0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0] {
        for &z in &zero_table(nu, 30)?.zeros {
            least = least.min(bessel_j_prime(nu, z)?.abs());
        }
    }
    Ok((least > 1e-6, format!("smallest |J'| at a zero: {least:.3e}")))
}

/// First positive root of tan x = x, by bisection on (π, 3π/2).
pub fn tan_fixed_point() -> f64 {
    let (mut a, mut b) = (PI, 1.5 * PI - 1e-12);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m.tan() - m < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn tan_oracle(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    Ok(within((bessel_zero(1.5, 1)? - tan_fixed_point()).abs(), 1e-12))
}

fn sample_det_point(rng: &mut ChaCha8Rng) -> (ModeIndex, f64, f64) {
    let k = rng.gen_range(0..5);
    let kappa: f64 = rng.gen_range(0.1..140.0);
    let alpha: f64 = rng.gen_range(0.2..25.0);
    (planar(k, 1), kappa, alpha)
}

fn determinant_antisymmetry(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(300, 1000) {
        let (m, kappa, alpha) = sample_det_point(rng);
        let a = (s.f_det)(m, kappa, alpha)?;
        let b = (s.f_det)(m, kappa, kappa / alpha)?;
        err = err.max((a + b).abs() / a.abs().max(1.0));
    }
    Ok(within(err, 1e-10))
}

fn determinant_raised_form(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(300, 1000) {
        let (m, kappa, alpha) = sample_det_point(rng);
        let a = (s.f_det)(m, kappa, alpha)?;
        let b = f_det_raised(m, kappa, alpha)?;
        err = err.max((a - b).abs() / f_det_scale(m, kappa, alpha)?.max(1e-300));
    }
    Ok(within(err, 1e-12))
}

fn determinant_next_degree(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(300, 1000) {
        let (m, kappa, alpha) = sample_det_point(rng);
        let next = ModeIndex { k: m.k + 1, ..m };
        let a = (s.f_det)(next, kappa, alpha)?;
        let b = f_det_next_degree(m, kappa, alpha)?;
        err = err.max((a - b).abs() / f_det_scale(next, kappa, alpha)?.max(1e-300));
    }
    Ok(within(err, 1e-12))
}

fn determinant_step_two(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(300, 1000) {
        let (m, kappa, alpha) = sample_det_point(rng);
        let up = ModeIndex { k: m.k + 2, ..m };
        let lhs = (s.f_det)(up, kappa, alpha)? - (s.f_det)(m, kappa, alpha)?;
        err = err.max((lhs - degree_step_two_gap(m, kappa, alpha)?).abs());
    }
    Ok(within(err, 1e-10))
}

fn roots_annihilate(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(100, 500) {
        let m = planar(rng.gen_range(0..4), rng.gen_range(1..4));
        let kappa: f64 = rng.gen_range(0.01..140.0);
        let r = alpha_root(m, kappa)?;
        err = err.max((s.f_det)(m, kappa, r.alpha)?.abs() / f_det_scale(m, kappa, r.alpha)?);
    }
    Ok(within(err, 1e-10))
}

fn h_tilde_derivative(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    let h = 1e-5;
    for _ in 0..s.level.pick(200, 1000) {
        let m = planar(rng.gen_range(0..6), 1);
        let z: f64 = rng.gen_range(0.1..30.0);
        let fd = (h_tilde(m, z + h)? - h_tilde(m, z - h)?) / (2.0 * h);
        let j = bessel_j(m.order(), z)?;
        err = err.max((fd - 2.0 * z * j * j).abs());
    }
    Ok(within(err, 1e-7))
}

fn h_decreasing(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    for k in 0..4u32 {
        let m = planar(k, 1);
        let zeros = zero_table(k as f64, 8)?.zeros;
        let mut edges = vec![0.0];
        edges.extend(zeros);
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mut prev = f64::INFINITY;
            for i in 1..200 {
                let z = a + (b - a) * i as f64 / 200.0;
                let v = h_aux(m, z)?;
                if v >= prev {
                    return Ok((false, format!("H_{k} increases near z = {z}")));
                }
                prev = v;
            }
            if a > 0.0 && h_aux(m, a + 1e-9 * a)? < 1e3 {
                return Ok((false, format!("H_{k} is not large right after zero {a}")));
            }
            if h_aux(m, b - 1e-9 * b)? > -1e3 {
                return Ok((false, format!("H_{k} is not large negative before zero {b}")));
            }
        }
    }
    Ok((true, "k <= 3, first 8 zero intervals".into()))
}

fn coincident_negative(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut largest = f64::NEG_INFINITY;
    for _ in 0..s.level.pick(1000, 1000) {
        let m = planar(rng.gen_range(0..6), 0);
        let alpha: f64 = rng.gen_range(1e-3..60.0);
        largest = largest.max(d_det(m, alpha)?);
    }
    Ok((largest < 0.0, format!("largest sampled D_k: {largest:.3e}")))
}

fn kappa_grid(level: Level) -> Vec<f64> {
    let n = level.pick(200, 1000);
    (0..n).map(|i| 0.01 + (140.0 - 0.01) * i as f64 / (n - 1) as f64).collect()
}

fn branches_increase(s: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let grid = kappa_grid(s.level);
    for k in 0..3 {
        for ell in 1..4 {
            let m = planar(k, ell);
            let mut prev = 0.0;
            for &kappa in &grid {
                let a = alpha_root(m, kappa)?.alpha;
                let h = 1e-6 * (1.0 + kappa);
                let slope = (alpha_root(m, kappa + h)?.alpha - alpha_root(m, (kappa - h).max(1e-9))?.alpha) / (2.0 * h);
                if a <= prev || slope <= 0.0 {
                    return Ok((false, format!("alpha_{m} not increasing at kappa = {kappa}")));
                }
                prev = a;
            }
        }
    }
    Ok((true, format!("9 branches on {} points", grid.len())))
}

fn alpha_square_over_kappa(s: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let grid = kappa_grid(s.level);
    for k in 0..3 {
        for ell in 1..4 {
            let m = planar(k, ell);
            let mut prev = f64::INFINITY;
            for &kappa in &grid {
                let a = alpha_root(m, kappa)?.alpha;
                let g = a * a / kappa;
                if g >= prev {
                    return Ok((false, format!("alpha^2/kappa for {m} rises at kappa = {kappa}")));
                }
                prev = g;
            }
        }
    }
    Ok((true, format!("9 branches on {} points", grid.len())))
}

fn near_any(kappa: f64, points: &[f64], tol: f64) -> bool {
    points.iter().any(|p| (kappa - p).abs() <= tol * (1.0 + kappa))
}

fn branch_k_below_k_plus_two(s: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let grid = kappa_grid(s.level);
    let mut ties = 0;
    for k in 0..3u32 {
        let products: Vec<f64> = (1..20)
            .map(|n| Ok(bessel_zero(k as f64 + 1.0, n)? * bessel_zero(k as f64 + 1.0, n + 1)?))
            .collect::<Result<_>>()?;
        for &kappa in &grid {
            let a = alpha_root(planar(k, 1), kappa)?.alpha;
            let b = alpha_root(planar(k + 2, 1), kappa)?.alpha;
            if a > b * (1.0 + 1e-12) {
                return Ok((false, format!("alpha_{k},1 > alpha_{},1 at kappa = {kappa}", k + 2)));
            }
            if (a - b).abs() <= 1e-10 * b {
                if !near_any(kappa, &products, 1e-6) {
                    return Ok((false, format!("equality away from products at kappa = {kappa}")));
                }
                ties += 1;
            }
        }
        // equality on the products themselves
        for &p in products.iter().filter(|&&p| p < 140.0) {
            let a = alpha_root(planar(k, 1), p)?.alpha;
            let b = alpha_root(planar(k + 2, 1), p)?.alpha;
            if (a - b).abs() > 1e-8 {
                return Ok((false, format!("no equality at product {p}")));
            }
        }
    }
    Ok((true, format!("k <= 2; {ties} grid ties, all at products")))
}

fn small_kappa_limit(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for k in 0..=2 {
        for ell in 1..=3 {
            let a = alpha_root(planar(k, ell), 1e-6)?.alpha;
            err = err.max((a - bessel_zero(k as f64 + 1.0, ell as usize)?).abs());
        }
    }
    Ok(within(err, 1e-3))
}

fn large_kappa_growth(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut least = f64::INFINITY;
    for k in 0..=2 {
        for ell in 1..=3 {
            least = least.min(alpha_root(planar(k, ell), 1e4)?.alpha);
        }
    }
    Ok((least > 50.0, format!("smallest alpha at kappa = 1e4: {least:.4}")))
}

fn crossing_roots(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for k in 0..=1u32 {
        for ell in 1..=2usize {
            let nu = k as f64;
            for n in 1..=2usize {
                let kappa = bessel_zero(nu, n)? * bessel_zero(nu, ell + n)?;
                let exact = bessel_zero(nu, ell + n)?;
                let a = alpha_root_with(planar(k, ell as i32), kappa, CrossingPolicy::Straddle)?.alpha;
                err = err.max((a - exact).abs());
                // the neighbouring degree meets the same value through the solver
                if k >= 1 {
                    let b = alpha_root(planar(k - 1, ell as i32), kappa)?.alpha;
                    err = err.max((b - exact).abs());
                }
                let c = alpha_root(planar(k + 1, ell as i32), kappa)?.alpha;
                err = err.max((c - exact).abs());
            }
        }
    }
    Ok(within(err, 1e-8))
}

fn crossing_slope_check(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for k in 0..=4u32 {
        for n in 1..=5usize {
            let (lower, upper) = crossing_slopes(k, n, 2)?;
            if !(lower > upper) {
                return Ok((false, format!("slope order fails at k = {k}, n = {n}")));
            }
            if k <= 1 && n <= 3 {
                let nu = k as f64;
                let kappa = bessel_zero(nu, n)? * bessel_zero(nu, n + 1)?;
                let h = 1e-5;
                let fd = |m: ModeIndex| -> Result<f64> {
                    Ok((alpha_root(m, kappa + h)?.alpha - alpha_root(m, kappa - h)?.alpha) / (2.0 * h))
                };
                err = err.max((fd(planar(k, 1))? - lower).abs());
                err = err.max((fd(planar(k + 1, 1))? - upper).abs());
            }
        }
    }
    Ok(within(err, 1e-4))
}

/// Roots of F_k on (a, b) located by a sign scan with step `h` and bisection.
fn scan_roots(m: ModeIndex, kappa: f64, a: f64, b: f64, h: f64) -> Result<Vec<f64>> {
    let mut roots = Vec::new();
    let mut x = a;
    let mut fx = f_det(m, kappa, x)?;
    while x < b {
        let y = (x + h).min(b);
        let fy = f_det(m, kappa, y)?;
        if fx != 0.0 && fy != 0.0 && fx.signum() != fy.signum() {
            roots.push(crate::eigenmodes::bisect(|t| f_det(m, kappa, t), x, y, fx)?);
        }
        x = y;
        fx = fy;
    }
    Ok(roots)
}

fn no_common_roots(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut closest = f64::INFINITY;
    let products = crossing_kappas(0, 1, 10, 2)?.kappas();
    let mut checked = 0;
    while checked < s.level.pick(20, 100) {
        let kappa: f64 = rng.gen_range(0.5..140.0);
        if near_any(kappa, &products, 1e-3) {
            continue;
        }
        checked += 1;
        let lo = kappa.sqrt() + 1e-6;
        let a = scan_roots(planar(0, 1), kappa, lo, 60.0, 0.01)?;
        let b = scan_roots(planar(1, 1), kappa, lo, 60.0, 0.01)?;
        for x in &a {
            for y in &b {
                closest = closest.min((x - y).abs());
            }
        }
    }
    Ok((closest > 1e-6, format!("closest roots of F_0 and F_1: {closest:.3e}")))
}

fn first_eigenvalue_minimum(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for _ in 0..s.level.pick(50, 200) {
        let kappa: f64 = rng.gen_range(1e-3..=140.0);
        let brute = (0..=6)
            .map(|k| alpha_root(planar(k, 1), kappa).map(|r| r.alpha))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        err = err.max((brute - first_eigenvalue(kappa, 2)?.alpha).abs());
    }
    Ok(within(err, 1e-12))
}

fn first_eigenvalue_lower_bound(s: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    for &kappa in &kappa_grid(s.level) {
        let l = first_eigenvalue(kappa, 2)?.lambda1;
        if l < 2.0 * kappa {
            return Ok((false, format!("lambda1 = {l} below 2 kappa at {kappa}")));
        }
        for k in 0..3 {
            if eigenvalue(planar(k, 2), kappa)? < 2.0 * kappa {
                return Ok((false, format!("lambda_{k},2 below 2 kappa at {kappa}")));
            }
        }
    }
    Ok((true, "lambda >= 2 kappa on the grid".into()))
}

fn random_modes(s: &Suite, rng: &mut ChaCha8Rng) -> Vec<(ModeIndex, f64)> {
    let mut out = Vec::new();
    let count = s.level.pick(8, 20);
    for _ in 0..count {
        let kappa: f64 = rng.gen_range(0.01..=140.0);
        for k in 0..=3 {
            for ell in 1..=3 {
                out.push((planar(k, ell), kappa));
            }
        }
    }
    out
}

fn clamped_boundary(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for (m, kappa) in random_modes(s, rng) {
        let em = EigenMode::new(m, kappa)?;
        let (v, d) = boundary_residual(&em)?;
        err = err.max(v).max(d);
    }
    Ok(within(err, 1e-9))
}

/// max over `points` interior radii of |(L + α²)(L + β²) R| / max|R|,
/// with L the radial Laplacian for degree k, from fourth-order central
/// differences evaluated in double-double.
pub fn factored_equation_residual(em: &EigenMode, points: usize) -> Result<f64> {
    let h = 2f64.powi(-13);
    let dim = em.mode.dim as f64;
    let k = em.mode.k as f64;
    let ang = k * (k + dim - 2.0);
    let a2 = em.alpha * em.alpha;
    let b2 = if em.kappa == 0.0 { 0.0 } else { em.beta() * em.beta() };
    let mut worst_res = 0.0_f64;
    for p in 0..points {
        // radii on the 2^-13 lattice, so every stencil point is exact
        let r0 = ((0.1 + 0.8 * (p as f64 + 0.5) / points as f64) / h).round() * h;
        let vals =
            (-4..=4).map(|i| radial_eval_extended(em, r0 + i as f64 * h)).collect::<Result<Vec<DoubleDouble>>>()?;
        let lap = |c: usize, f: &dyn Fn(usize) -> DoubleDouble| -> DoubleDouble {
            let r = DoubleDouble::new(r0 + (c as f64 - 4.0) * h);
            let (m2, m1, z, p1, p2) = (f(c - 2), f(c - 1), f(c), f(c + 1), f(c + 2));
            let d1 = (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h);
            let d2 = ((m1 + p1) * 16.0 - (m2 + p2) - z * 30.0) / (12.0 * h * h);
            d2 + d1 * (dim - 1.0) / r - z * ang / (r * r)
        };
        let raw = |i: usize| vals[i];
        let lr: Vec<DoubleDouble> = (2..=6).map(|c| lap(c, &raw)).collect();
        let lr_at = |i: usize| lr[i - 2];
        let llr = lap(4, &lr_at);
        let res = llr + lr[2] * (a2 + b2) + vals[4] * (a2 * b2);
        worst_res = worst_res.max(res.to_f64().abs());
    }
    Ok(worst_res)
}

fn factored_pde_residual(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for (m, kappa) in random_modes(s, rng) {
        let em = EigenMode::new(m, kappa)?;
        err = err.max(factored_equation_residual(&em, 20)?);
    }
    Ok(within(err, 1e-4))
}

fn zero_kappa_modes(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut err = 0.0_f64;
    for k in 0..=3 {
        for ell in 1..=3 {
            let m = planar(k, ell);
            let exact = EigenMode::new(m, 0.0)?;
            let near = EigenMode::new(m, 1e-6)?;
            for i in 0..=100 {
                let r = i as f64 / 100.0;
                err = err.max((radial_eval(&exact, r)? - radial_eval(&near, r)?).abs());
            }
            let (v, d) = boundary_residual(&exact)?;
            err = err.max(v).max(d);
        }
    }
    Ok(within(err, 1e-3))
}

fn radial_mode_decreasing(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    for &kappa in &[1.0, 5.0, 13.0] {
        let p = radial_profile(&EigenMode::new(planar(0, 1), kappa)?, 201)?;
        if p.values.windows(2).any(|w| w[1] >= w[0]) {
            return Ok((false, format!("R_0,1 not decreasing at kappa = {kappa}")));
        }
    }
    Ok((true, "kappa in {1, 5, 13}".into()))
}

fn first_branch_positive(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    for k in 1..=3u32 {
        let nu = k as f64;
        let limit = bessel_zero(nu, 1)? * bessel_zero(nu, 2)?;
        for i in 1..=5 {
            let kappa = limit * i as f64 / 5.0 * (1.0 - 1e-6);
            let p = radial_profile(&EigenMode::new(planar(k, 1), kappa)?, 201)?;
            let n = p.grid.len();
            if p.values[1..n - 1].iter().any(|&v| v <= 0.0) {
                return Ok((false, format!("R_{k},1 not positive at kappa = {kappa}")));
            }
        }
    }
    Ok((true, "k in 1..=3, five kappa each".into()))
}

fn zero_count_prediction(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut products = crossing_kappas(0, 1, 10, 2)?.kappas();
    products.extend(crossing_kappas(1, 1, 10, 2)?.kappas());
    while checked < s.level.pick(40, 200) {
        let kappa: f64 = rng.gen_range(0.1..=140.0);
        if near_any(kappa, &products, 1e-3) {
            continue;
        }
        checked += 1;
        for k in 0..=1 {
            let em = EigenMode::new(planar(k, 1), kappa)?;
            let report = count_zeros(&radial_profile(&em, 101)?)?;
            if !report.matches || !report.non_simple().is_empty() {
                return Ok((
                    false,
                    format!("k = {k}, kappa = {kappa}: {} zeros, predicted {:?}", report.count, report.predicted_count),
                ));
            }
        }
    }
    Ok((true, format!("{checked} kappa values, k in {{0, 1}}")))
}

fn sign_alternation(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut products = crossing_kappas(0, 1, 10, 2)?.kappas();
    products.extend(crossing_kappas(1, 1, 10, 2)?.kappas());
    let mut checked = 0;
    while checked < s.level.pick(20, 100) {
        let kappa: f64 = rng.gen_range(0.1..=140.0);
        if near_any(kappa, &products, 1e-3) {
            continue;
        }
        checked += 1;
        for k in 0..=1 {
            if !verify_sign_alternation(k, kappa, 2)? {
                return Ok((false, format!("k = {k}, kappa = {kappa}")));
            }
        }
    }
    Ok((true, format!("{checked} kappa values")))
}

fn last_arch(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut products = crossing_kappas(0, 1, 10, 2)?.kappas();
    products.extend(crossing_kappas(1, 1, 10, 2)?.kappas());
    let mut checked = 0;
    while checked < s.level.pick(20, 100) {
        let kappa: f64 = rng.gen_range(0.1..=140.0);
        if near_any(kappa, &products, 1e-3) {
            continue;
        }
        checked += 1;
        for k in 0..=1 {
            let (observed, expected) = last_arch_sign(k, kappa, 2)?;
            if observed != expected {
                return Ok((false, format!("k = {k}, kappa = {kappa}")));
            }
        }
    }
    Ok((true, format!("{checked} kappa values")))
}

fn nodal_region_arithmetic(s: &Suite, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let products = crossing_kappas(0, 1, 10, 2)?.kappas();
    let mut checked = 0;
    while checked < s.level.pick(30, 200) {
        let kappa: f64 = rng.gen_range(0.1..=140.0);
        if near_any(kappa, &products, 1e-3) {
            continue;
        }
        checked += 1;
        let report = classify_regime(kappa, 2)?;
        let m = report.attaining[0];
        let zeros = count_zeros(&radial_profile(&EigenMode::new(m, kappa)?, 101)?)?.count;
        let factor = if report.regime == Regime::Degree1 { 2 } else { 1 };
        if report.nodal_regions != Some((zeros + 1) * factor) {
            return Ok((false, format!("kappa = {kappa}: {:?} regions, {zeros} zeros", report.nodal_regions)));
        }
    }
    Ok((true, format!("{checked} kappa values")))
}

fn regime_boundaries_are_products(s: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let expected = crossing_kappas(0, 1, 4, 2)?;
    let expected: Vec<f64> = expected.kappas().into_iter().filter(|&k| k <= 140.0).collect();
    let bounds: Vec<f64> = regime_boundaries(140.0, 2)?.into_iter().map(|b| b.kappa).filter(|&k| k <= 140.0).collect();
    if bounds != expected {
        return Ok((false, format!("{bounds:?} vs {expected:?}")));
    }
    // every change of regime along a grid happens across one of them
    let grid = kappa_grid(s.level);
    let mut prev: Option<(f64, Regime, Option<usize>)> = None;
    for &kappa in &grid {
        if near_any(kappa, &expected, 1e-9) {
            continue;
        }
        let r = classify_regime(kappa, 2)?;
        if let Some((pk, preg, pn)) = prev {
            if (preg, pn) != (r.regime, r.nodal_regions) && !expected.iter().any(|&b| pk < b && b < kappa) {
                return Ok((false, format!("regime changes between {pk} and {kappa} without a product")));
            }
        }
        prev = Some((kappa, r.regime, r.nodal_regions));
    }
    Ok((true, format!("{} boundaries below 140", bounds.len())))
}

fn crossing_multiplicity(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    for point in crossing_kappas(0, 1, 2, 2)?.points {
        let r = classify_regime(point.kappa, 2)?;
        let want = match point.family {
            CrossingFamily::SameOrder => (Regime::CrossingRadialDegree1, Some(3)),
            CrossingFamily::NextOrder => (Regime::CrossingTriple, Some(5)),
        };
        if (r.regime, r.multiplicity) != want {
            return Ok((false, format!("{}: {:?}", point.label, r.regime)));
        }
    }
    Ok((true, "n in {1, 2}".into()))
}

fn three_dim_zero_kappa(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let oracle = tan_fixed_point();
    let zero = bessel_zero(1.5, 1)?;
    let lambda = first_eigenvalue(0.0, 3)?.lambda1;
    let err = (zero - oracle).abs().max((lambda - oracle * oracle).abs() / (oracle * oracle));
    Ok(within(err, 1e-9))
}

fn three_dim_boundaries(_: &Suite, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let bounds = regime_boundaries(60.0, 3)?;
    let err = (bounds[0].kappa - 2.0 * PI * PI).abs();
    if err >= 1e-6 {
        return Ok(within(err, 1e-6));
    }
    for b in &bounds {
        let nu = if b.family == 0 { 0.5 } else { 1.5 };
        let want = bessel_zero(nu, b.n)? * bessel_zero(nu, b.n + 1)?;
        if b.family == 0 && (b.kappa - (b.n * (b.n + 1)) as f64 * PI * PI).abs() > 1e-9 {
            return Ok((false, format!("{} is not n(n+1) pi^2", b.label)));
        }
        if (b.kappa - want).abs() > 1e-12 {
            return Ok((false, b.label.clone()));
        }
    }
    Ok(within(err, 1e-6))
}

/// Run a suite and return whether everything passed.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
