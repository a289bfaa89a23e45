//! Bessel functions of the first kind J_ν(x) for real ν ≥ 0 and x ≥ 0.
//!
//! Two evaluation regimes:
//!
//! * ascending series `(x/2)^ν / Γ(ν+1) · Σ (−x²/4)^m / (m! (ν+1)_m)`,
//!   accumulated in double-double so the cancellation for moderate x costs
//!   nothing visible in f64. Used for `x < 30` and whenever `ν ≥ x`.
//! * Hankel asymptotic expansion for the fractional part of the order,
//!   followed by forward recurrence up to ν (stable while ν < x).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::gamma::{gamma_shifted, ln_gamma};

/// Largest order accepted by the evaluators. The public contract is
/// ν ≤ 60; the headroom covers J_{ν+1} and J_{ν+2} needed by derivatives.
pub const MAX_ORDER: f64 = 64.0;
/// Largest argument accepted by the evaluators.
pub const MAX_ARGUMENT: f64 = 1000.0;

const SERIES_LIMIT: f64 = 30.0;

/// Real Bessel order ν ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, serde::Serialize, serde::Deserialize)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        check_order(nu)?;
        Ok(Self(nu))
    }

    /// ν_k = k + (N − 2)/2 for angular degree k in dimension N.
    pub fn for_degree(k: u32, dim: u32) -> Self {
        Self(k as f64 + (dim as f64 - 2.0) / 2.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn shifted(self, by: f64) -> Self {
        Self(self.0 + by)
    }
}

impl From<Order> for f64 {
    fn from(o: Order) -> f64 {
        o.0
    }
}

pub(crate) fn check_order(nu: f64) -> Result<()> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::Domain(format!("order must be finite and >= 0, got {nu}")));
    }
    if nu > MAX_ORDER {
        return Err(Error::Range(format!("order {nu} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("argument must be >= 0, got {x}")));
    }
    if x > MAX_ARGUMENT {
        return Err(Error::Range(format!("argument {x} exceeds {MAX_ARGUMENT}")));
    }
    Ok(())
}

#[inline]
fn use_series(nu: f64, x: f64) -> bool {
    x < SERIES_LIMIT || nu >= x
}

/// Divide a series term by m(m + ν), in plain f64 when that product is exact.
#[inline]
fn divide_by_rising(term: DoubleDouble, m: f64, nu: f64) -> DoubleDouble {
    let mn = m + nu;
    let prod = m * mn;
    if mn - m == nu && m.mul_add(mn, -prod) == 0.0 {
        term / prod
    } else {
        term / ((DoubleDouble::new(m) + DoubleDouble::new(nu)) * m)
    }
}

/// Σ_{m≥0} (−x²/4)^m / (m! (ν+1)_m) in double-double.
fn series_sum(nu: f64, x: f64) -> DoubleDouble {
    series_sum_dd(nu, DoubleDouble::new(x))
}

fn series_sum_dd(nu: f64, z: DoubleDouble) -> DoubleDouble {
    let x = z.hi;
    let q = -(z * z) / 4.0;
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    let mut m = 0.0_f64;
    loop {
        m += 1.0;
        term = divide_by_rising(term * q, m, nu);
        sum = sum + term;
        if m > 0.5 * x && term.hi.abs() <= 1e-34 * sum.hi.abs().max(1e-300) {
            break;
        }
        if m > 2000.0 {
            break;
        }
    }
    sum
}

/// The series sums for orders ν and ν+1 from one loop.
fn series_sums_pair(nu: f64, x: f64) -> (DoubleDouble, DoubleDouble) {
    let q = -(DoubleDouble::new(x) * DoubleDouble::new(x)) / 4.0;
    let nu1 = nu + 1.0;
    let (mut t0, mut t1) = (DoubleDouble::ONE, DoubleDouble::ONE);
    let (mut s0, mut s1) = (DoubleDouble::ONE, DoubleDouble::ONE);
    let mut m = 0.0_f64;
    loop {
        m += 1.0;
        t0 = divide_by_rising(t0 * q, m, nu);
        t1 = divide_by_rising(t1 * q, m, nu1);
        s0 = s0 + t0;
        s1 = s1 + t1;
        if m > 0.5 * x
            && t0.hi.abs() <= 1e-34 * s0.hi.abs().max(1e-300)
            && t1.hi.abs() <= 1e-34 * s1.hi.abs().max(1e-300)
        {
            break;
        }
        if m > 2000.0 {
            break;
        }
    }
    (s0, s1)
}

/// (x/2)^ν / Γ(ν+1), or None when it underflows to zero.
fn series_prefactor(nu: f64, x: f64) -> Option<f64> {
    let half = 0.5 * x;
    if half < 1.0 {
        let log = nu * half.ln() - ln_gamma(nu + 1.0);
        if log < -745.0 {
            return None;
        }
    }
    let whole = nu.floor();
    let frac = nu - whole;
    let mut p = DoubleDouble::new(half).powi(whole as u32);
    if frac == 0.5 {
        p = p * DoubleDouble::new(half).sqrt();
    } else if frac != 0.0 {
        p = p * half.powf(frac);
    }
    Some(p.to_f64() / gamma_shifted(nu))
}

fn j_series(nu: f64, x: f64) -> f64 {
    match series_prefactor(nu, x) {
        None => 0.0,
        Some(pre) => pre * series_sum(nu, x).to_f64(),
    }
}

/// (J_ν(x), J_{ν+1}(x)) and their ratio from the series.
fn j_series_pair(nu: f64, x: f64) -> (f64, f64, f64) {
    let (s0, s1) = series_sums_pair(nu, x);
    let ratio = 0.5 * x / (nu + 1.0) * s1.to_f64() / s0.to_f64();
    match series_prefactor(nu, x) {
        None => (0.0, 0.0, ratio),
        Some(pre) => {
            let j = pre * s0.to_f64();
            let j1 = pre * (0.5 * x / (nu + 1.0)) * s1.to_f64();
            (j, j1, ratio)
        }
    }
}

/// Hankel expansion of J_μ(x) for small μ (here μ < 2) and x ≥ 30.
fn j_hankel(mu: f64, x: f64) -> f64 {
    let four_mu2 = 4.0 * mu * mu;
    let mut a = 1.0_f64;
    let mut p = 1.0_f64;
    let mut q = 0.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kk = k as f64;
        let odd = 2.0 * kk - 1.0;
        a *= (four_mu2 - odd * odd) / (8.0 * kk * x);
        let mag = a.abs();
        if mag > prev || mag < 1e-18 {
            break;
        }
        prev = mag;
        // term sign pattern: P gets a_0 − a_2 + a_4 …, Q gets a_1 − a_3 + …
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
    }
    let phase = (0.5 * mu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// J_ν(x) and J_{ν+1}(x) by Hankel start values and forward recurrence.
fn j_hankel_pair(nu: f64, x: f64) -> (f64, f64) {
    let whole = nu.floor();
    let mu = nu - whole;
    let mut lower = j_hankel(mu, x);
    let mut upper = j_hankel(mu + 1.0, x);
    let mut order = mu + 1.0;
    let steps = whole as usize;
    for _ in 0..steps {
        let next = 2.0 * order / x * upper - lower;
        lower = upper;
        upper = next;
        order += 1.0;
    }
    (lower, upper)
}

fn j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if use_series(nu, x) {
        j_series(nu, x)
    } else {
        j_hankel_pair(nu, x).0
    }
}

/// J_ν(x).
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    check_argument(x)?;
    let v = j_unchecked(nu, x);
    if !v.is_finite() {
        return Err(Error::Overflow(format!("J_{nu}({x}) is not representable")));
    }
    Ok(v)
}

/// (J_ν(x), J_{ν+1}(x)) sharing work where the evaluation path allows it.
pub fn bessel_j_pair(nu: f64, x: f64) -> Result<(f64, f64)> {
    check_order(nu)?;
    check_argument(x)?;
    if x == 0.0 {
        return Ok((if nu == 0.0 { 1.0 } else { 0.0 }, 0.0));
    }
    if use_series(nu, x) && use_series(nu + 1.0, x) {
        let (j, j1, _) = j_series_pair(nu, x);
        Ok((j, j1))
    } else if !use_series(nu, x) && !use_series(nu + 1.0, x) {
        Ok(j_hankel_pair(nu, x))
    } else {
        Ok((j_unchecked(nu, x), j_unchecked(nu + 1.0, x)))
    }
}

/// J′_ν(x) = −J_{ν+1}(x) + (ν/x) J_ν(x).
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    check_argument(x)?;
    if x == 0.0 {
        return if nu == 0.0 || nu > 1.0 {
            Ok(0.0)
        } else if nu == 1.0 {
            Ok(0.5)
        } else {
            Err(Error::Domain(format!("J'_{nu} is unbounded at the origin for 0 < nu < 1")))
        };
    }
    let (j, j1) = bessel_j_pair(nu, x)?;
    Ok(-j1 + nu / x * j)
}

/// J_{ν+1}(x) / J_ν(x), computed from normalized series sums where the
/// series applies so that small x does not underflow.
pub fn bessel_ratio(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    check_argument(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if use_series(nu, x) && use_series(nu + 1.0, x) {
        Ok(j_series_pair(nu, x).2)
    } else {
        let (j, j1) = bessel_j_pair(nu, x)?;
        Ok(j1 / j)
    }
}

/// z^{−s} J_ν(z) for 0 ≤ s ≤ ν, finite at z = 0.
///
/// Radial profiles in dimension N carry r^{−(N−2)/2} in front of
/// J_{ν_k}(γr); evaluating the quotient through the series avoids 0/0.
pub fn bessel_j_scaled(nu: f64, s: f64, z: f64) -> Result<f64> {
    check_order(nu)?;
    check_argument(z)?;
    if s < 0.0 || s > nu + 1e-15 {
        return Err(Error::Domain(format!("scaling exponent {s} must lie in [0, {nu}]")));
    }
    if s == 0.0 {
        return bessel_j(nu, z);
    }
    if z == 0.0 {
        return Ok(if (nu - s).abs() < 1e-15 { 0.5_f64.powf(nu) / gamma_shifted(nu) } else { 0.0 });
    }
    if z <= 1.0 {
        let lead = 0.5_f64.powf(nu) * z.powf(nu - s) / gamma_shifted(nu);
        return Ok(lead * series_sum(nu, z).to_f64());
    }
    Ok(z.powf(-s) * j_unchecked(nu, z))
}

/// z^{−s} J_ν(z) in double-double, argument included, for high-order
/// finite-difference checks. Requires ν − s to be a non-negative integer
/// and the series regime.
pub fn bessel_j_scaled_extended(nu: f64, s: f64, z: DoubleDouble) -> Result<DoubleDouble> {
    check_order(nu)?;
    check_argument(z.hi)?;
    let k = nu - s;
    if k < 0.0 || (k - k.round()).abs() > 1e-12 {
        return Err(Error::Domain(format!("nu - s must be a non-negative integer, got {k}")));
    }
    if !use_series(nu, z.hi) {
        return Err(Error::Range(format!("extended evaluation needs z < {SERIES_LIMIT}, got {}", z.hi)));
    }
    let lead = 0.5_f64.powf(nu) / gamma_shifted(nu);
    Ok(z.powi(k.round() as u32) * series_sum_dd(nu, z) * lead)
}

/// H̃_ν(z) = (z² − ν²) J_ν(z)² + z² J′_ν(z)².
pub fn h_tilde_order(nu: f64, z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::Domain(format!("H~ needs z > 0, got {z}")));
    }
    let (j, j1) = bessel_j_pair(nu, z)?;
    let jp = -j1 + nu / z * j;
    Ok((z * z - nu * nu) * j * j + z * z * jp * jp)
}

/// H_ν(z) = z J′_ν(z) / J_ν(z) = ν − z J_{ν+1}(z)/J_ν(z).
pub fn h_aux_order(nu: f64, z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::Domain(format!("H needs z > 0, got {z}")));
    }
    check_order(nu)?;
    check_argument(z)?;
    let (j, j1, ratio) = if use_series(nu, z) && use_series(nu + 1.0, z) {
        j_series_pair(nu, z)
    } else {
        let (j, j1) = bessel_j_pair(nu, z)?;
        (j, j1, j1 / j)
    };
    // near a zero, |J/J'| is the distance to it
    let jp = -j1 + nu / z * j;
    if (j == 0.0 || j.abs() < 1e-12 * jp.abs()) && (j != 0.0 || j1 != 0.0) {
        return Err(Error::Pole { nu, z });
    }
    Ok(nu - z * ratio)
}

/// Leading-order Hankel form √(2/(πx)) cos(x − νπ/2 − π/4).
pub fn bessel_j_leading_asymptotic(nu: f64, x: f64) -> f64 {
    (2.0 / (PI * x)).sqrt() * (x - nu * FRAC_PI_2 - FRAC_PI_4).cos()
}
