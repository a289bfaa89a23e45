//! The characteristic determinant F_k(α) and its root branches α_{k,ℓ}(κ).
//!
//! For κ > 0 an eigenfunction with angular degree k has radial part
//! r^{−s}[c J_ν(αr) + d J_ν(βr)], s = (N−2)/2, ν = k + s, β = κ/α, and the
//! clamped conditions at r = 1 reduce to F_k(α) = 0 with
//!
//! ```text
//! F_k(α) = β J_ν(α) J'_ν(β) − α J_ν(β) J'_ν(α).
//! ```
//!
//! F_k(κ/α) = −F_k(α), so roots pair up as α_{k,ℓ} > √κ > α_{k,−ℓ} = κ/α_{k,ℓ}.
//! The eigenvalue is λ = α² + κ²/α².

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::solve_increasing;
use crate::special_functions::{bessel_j_pair, bessel_zero, h_aux_order, h_tilde_order, zero_or_origin, Order};

/// Relative window (scaled by 1 + κ) inside which κ counts as sitting on a
/// crossing product.
pub const CROSSING_TOLERANCE: f64 = 1e-9;

const ROOT_REL_TOL: f64 = 1e-15;

/// Angular degree k, branch index ℓ and ambient dimension N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    pub k: u32,
    pub ell: i32,
    pub dim: u32,
}

impl ModeIndex {
    pub fn new(k: u32, ell: i32, dim: u32) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidMode(format!("dimension must be >= 2, got {dim}")));
        }
        let m = Self { k, ell, dim };
        if m.order() > 60.0 {
            return Err(Error::InvalidMode(format!("order {} of degree {k} in dimension {dim} exceeds 60", m.order())));
        }
        Ok(m)
    }

    /// Two-dimensional shorthand.
    pub fn planar(k: u32, ell: i32) -> Self {
        Self { k, ell, dim: 2 }
    }

    pub fn with_ell(self, ell: i32) -> Self {
        Self { ell, ..self }
    }

    /// Exponent s = (N − 2)/2 of the r^{−s} prefactor.
    pub fn shift(&self) -> f64 {
        (self.dim as f64 - 2.0) / 2.0
    }

    /// Bessel order ν_k = k + (N − 2)/2.
    pub fn order(&self) -> f64 {
        Order::for_degree(self.k, self.dim).value()
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.ell)
    }
}

/// A solved point α_{k,ℓ}(κ) on a branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaRoot {
    pub mode: ModeIndex,
    pub kappa: f64,
    pub alpha: f64,
    /// Open interval known to contain α. Collapses to a point for ℓ = 0
    /// and on crossing products.
    pub bracket: (f64, f64),
    /// |F_k(α)|.
    pub residual: f64,
    /// κ lies on a product j_{ν,n} j_{ν,ℓ+n} and α was set to the Bessel zero.
    pub degenerate: bool,
}

impl AlphaRoot {
    pub fn beta(&self) -> f64 {
        if self.alpha == 0.0 {
            0.0
        } else {
            self.kappa / self.alpha
        }
    }

    pub fn lambda(&self) -> f64 {
        lambda_from_alpha(self.alpha, self.kappa)
    }
}

/// λ = α² + κ²/α².
pub fn lambda_from_alpha(alpha: f64, kappa: f64) -> f64 {
    if kappa == 0.0 {
        alpha * alpha
    } else {
        alpha * alpha + (kappa / alpha) * (kappa / alpha)
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

fn j_and_prime(nu: f64, x: f64) -> Result<(f64, f64, f64)> {
    let (j, j1) = bessel_j_pair(nu, x)?;
    Ok((j, -j1 + nu / x * j, j1))
}

/// F_k(α) and the size it is judged against.
fn f_det_terms(nu: f64, kappa: f64, alpha: f64) -> Result<(f64, f64)> {
    let beta = kappa / alpha;
    let (ja, dja, _) = j_and_prime(nu, alpha)?;
    let (jb, djb, _) = j_and_prime(nu, beta)?;
    let value = beta * ja * djb - alpha * jb * dja;
    let scale = (alpha + beta) * ja.abs().max(dja.abs()) * jb.abs().max(djb.abs());
    Ok((value, scale))
}

/// F_k(α) = (κ/α) J_ν(α) J'_ν(κ/α) − α J_ν(κ/α) J'_ν(α).
pub fn f_det(mode: ModeIndex, kappa: f64, alpha: f64) -> Result<f64> {
    check_positive("kappa", kappa)?;
    check_positive("alpha", alpha)?;
    Ok(f_det_terms(mode.order(), kappa, alpha)?.0)
}

/// Size against which |F_k(α)| is judged:
/// (α + β) · max(|J_ν(α)|, |J'_ν(α)|) · max(|J_ν(β)|, |J'_ν(β)|).
/// J_ν and J'_ν never vanish together, so this stays away from zero even
/// where both terms of F_k do.
pub fn f_det_scale(mode: ModeIndex, kappa: f64, alpha: f64) -> Result<f64> {
    check_positive("kappa", kappa)?;
    check_positive("alpha", alpha)?;
    Ok(f_det_terms(mode.order(), kappa, alpha)?.1)
}

/// F_k written with J_{ν+1} in place of derivatives:
/// α J_ν(β) J_{ν+1}(α) − β J_ν(α) J_{ν+1}(β).
pub fn f_det_raised(mode: ModeIndex, kappa: f64, alpha: f64) -> Result<f64> {
    check_positive("kappa", kappa)?;
    check_positive("alpha", alpha)?;
    let nu = mode.order();
    let beta = kappa / alpha;
    let (ja, ja1) = bessel_j_pair(nu, alpha)?;
    let (jb, jb1) = bessel_j_pair(nu, beta)?;
    Ok(alpha * jb * ja1 - beta * ja * jb1)
}

/// F_{k+1} written with orders ν and ν+1 only:
/// β J_ν(β) J_{ν+1}(α) − α J_ν(α) J_{ν+1}(β).
pub fn f_det_next_degree(mode: ModeIndex, kappa: f64, alpha: f64) -> Result<f64> {
    check_positive("kappa", kappa)?;
    check_positive("alpha", alpha)?;
    let nu = mode.order();
    let beta = kappa / alpha;
    let (ja, ja1) = bessel_j_pair(nu, alpha)?;
    let (jb, jb1) = bessel_j_pair(nu, beta)?;
    Ok(beta * jb * ja1 - alpha * ja * jb1)
}

/// Right-hand side of F_{k+2}(α) − F_k(α) = 2(ν+1)(κ² − α⁴)/(α²κ) J_{ν+1}(α) J_{ν+1}(β).
pub fn degree_step_two_gap(mode: ModeIndex, kappa: f64, alpha: f64) -> Result<f64> {
    check_positive("kappa", kappa)?;
    check_positive("alpha", alpha)?;
    let nu = mode.order();
    let beta = kappa / alpha;
    let ja1 = bessel_j_pair(nu + 1.0, alpha)?.0;
    let jb1 = bessel_j_pair(nu + 1.0, beta)?.0;
    let a2 = alpha * alpha;
    Ok(2.0 * (nu + 1.0) * (kappa * kappa - a2 * a2) / (a2 * kappa) * ja1 * jb1)
}

/// H̃(z) = (z² − ν²) J_ν(z)² + z² J'_ν(z)², positive and increasing on z > 0.
pub fn h_tilde(mode: ModeIndex, z: f64) -> Result<f64> {
    check_positive("z", z)?;
    h_tilde_order(mode.order(), z)
}

/// H(z) = z J'_ν(z) / J_ν(z), decreasing between consecutive zeros of J_ν.
pub fn h_aux(mode: ModeIndex, z: f64) -> Result<f64> {
    check_positive("z", z)?;
    h_aux_order(mode.order(), z)
}

/// Determinant of the boundary system on the coincident branch α = β = √κ:
/// D_k(α) = J_ν(α)(J'_ν(α) + α J''_ν(α)) − α J'_ν(α)², never zero for α > 0.
pub fn d_det(mode: ModeIndex, alpha: f64) -> Result<f64> {
    check_positive("alpha", alpha)?;
    let nu = mode.order();
    let (j, dj, _) = j_and_prime(nu, alpha)?;
    let ddj = -dj / alpha - (1.0 - nu * nu / (alpha * alpha)) * j;
    Ok(j * (dj + alpha * ddj) - alpha * dj * dj)
}

fn near(kappa: f64, product: f64) -> bool {
    (kappa - product).abs() <= CROSSING_TOLERANCE * (1.0 + kappa)
}

/// Label "j(ν,a)*j(ν,b)" for a zero product.
pub fn product_label(nu: f64, a: usize, b: usize) -> String {
    format!("j({nu},{a})*j({nu},{b})")
}

/// Where κ sits relative to the products P_n = j_{ν,n} j_{ν,ℓ+n} (P_0 = 0).
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum ProductPosition {
    /// P_n < κ < P_{n+1}
    Inside(usize),
    /// κ ≈ P_n, n ≥ 1
    At(usize),
}

/// Locate κ among P_n = j_{ν,n} j_{ν,shift+n}, n = 0, 1, 2, ….
pub(crate) fn locate_in_products(nu: f64, shift: usize, kappa: f64) -> Result<ProductPosition> {
    let mut n = 0usize;
    loop {
        let next = bessel_zero(nu, n + 1)? * bessel_zero(nu, shift + n + 1)?;
        if near(kappa, next) {
            return Ok(ProductPosition::At(n + 1));
        }
        if kappa < next {
            return Ok(ProductPosition::Inside(n));
        }
        n += 1;
    }
}

/// The interval (j_{ν,ℓ+n}, j_{ν,ℓ+n+1}) holding α_{k,ℓ}(κ), where
/// j_{ν,n} j_{ν,ℓ+n} < κ < j_{ν,n+1} j_{ν,ℓ+n+1}.
pub fn bracket_alpha(mode: ModeIndex, kappa: f64) -> Result<(f64, f64)> {
    check_positive("kappa", kappa)?;
    if mode.ell < 1 {
        return Err(Error::InvalidMode(format!("bracket needs ell >= 1, got {}", mode.ell)));
    }
    let nu = mode.order();
    let ell = mode.ell as usize;
    match locate_in_products(nu, ell, kappa)? {
        ProductPosition::Inside(n) => Ok((bessel_zero(nu, ell + n)?, bessel_zero(nu, ell + n + 1)?)),
        ProductPosition::At(n) => Err(Error::DegenerateKappa {
            kappa,
            product: bessel_zero(nu, n)? * bessel_zero(nu, ell + n)?,
            label: product_label(nu, n, ell + n),
        }),
    }
}

/// How to treat κ on a product point j_{ν,n} j_{ν,ℓ+n}, where F_k vanishes
/// at both ends of the bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingPolicy {
    /// Return the exact value j_{ν,ℓ+n}.
    Snap,
    /// Average the solved roots at κ ± δ; the branch is smooth, so this
    /// reproduces α to O(δ²) without using the closed form.
    Straddle,
}

/// α_{k,ℓ}(κ) for any integer ℓ and κ ≥ 0.
pub fn alpha_root(mode: ModeIndex, kappa: f64) -> Result<AlphaRoot> {
    alpha_root_with(mode, kappa, CrossingPolicy::Snap)
}

pub fn alpha_root_with(mode: ModeIndex, kappa: f64, policy: CrossingPolicy) -> Result<AlphaRoot> {
    ModeIndex::new(mode.k, mode.ell, mode.dim)?;
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be finite and >= 0, got {kappa}")));
    }
    let nu = mode.order();
    if kappa == 0.0 {
        if mode.ell <= 0 {
            return Err(Error::InvalidMode(format!("branch ell = {} collapses to alpha = 0 at kappa = 0", mode.ell)));
        }
        let ell = mode.ell as usize;
        let alpha = bessel_zero(nu + 1.0, ell)?;
        return Ok(AlphaRoot {
            mode,
            kappa,
            alpha,
            bracket: (bessel_zero(nu, ell)?, bessel_zero(nu, ell + 1)?),
            residual: 0.0,
            degenerate: false,
        });
    }
    if mode.ell == 0 {
        let alpha = kappa.sqrt();
        return Ok(AlphaRoot { mode, kappa, alpha, bracket: (alpha, alpha), residual: 0.0, degenerate: false });
    }
    if mode.ell < 0 {
        let upper = alpha_root_with(mode.with_ell(-mode.ell), kappa, policy)?;
        let alpha = kappa / upper.alpha;
        return Ok(AlphaRoot {
            mode,
            kappa,
            alpha,
            bracket: (kappa / upper.bracket.1, kappa / upper.bracket.0),
            residual: f_det(mode, kappa, alpha)?.abs(),
            degenerate: upper.degenerate,
        });
    }

    let ell = mode.ell as usize;
    let n = match locate_in_products(nu, ell, kappa)? {
        ProductPosition::Inside(n) => n,
        ProductPosition::At(n) => {
            let exact = bessel_zero(nu, ell + n)?;
            let alpha = match policy {
                CrossingPolicy::Snap => exact,
                CrossingPolicy::Straddle => {
                    let delta = 1e-6 * (1.0 + kappa);
                    let below = alpha_root_with(mode, kappa - delta, policy)?.alpha;
                    let above = alpha_root_with(mode, kappa + delta, policy)?.alpha;
                    0.5 * (below + above)
                }
            };
            return Ok(AlphaRoot {
                mode,
                kappa,
                alpha,
                bracket: (exact, exact),
                residual: f_det(mode, kappa, alpha)?.abs(),
                degenerate: true,
            });
        }
    };

    let lo_zero = bessel_zero(nu, ell + n)?;
    let hi_zero = bessel_zero(nu, ell + n + 1)?;
    let jn = zero_or_origin(nu, n)?;
    let jn1 = bessel_zero(nu, n + 1)?;
    // β = κ/α must stay in (j_{ν,n}, j_{ν,n+1}) so that H(β) − H(α) is
    // continuous and increasing from −∞ to +∞.
    let lo = lo_zero.max(kappa / jn1);
    let hi = if jn == 0.0 { hi_zero } else { hi_zero.min(kappa / jn) };
    let monotone = |a: f64| -> Result<f64> {
        let b = kappa / a;
        Ok(h_aux_or_pole(nu, b)? - h_aux_or_pole(nu, a)?)
    };
    let alpha = solve_increasing(monotone, lo, hi, ROOT_REL_TOL)?;

    let (value, scale) = f_det_terms(nu, kappa, alpha)?;
    let residual = value.abs();
    if residual > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NonConvergence(format!(
            "alpha_{mode} at kappa = {kappa}: residual {residual:e} against scale {scale:e}"
        )));
    }
    Ok(AlphaRoot { mode, kappa, alpha, bracket: (lo_zero, hi_zero), residual, degenerate: false })
}

/// H(z), mapping an exact pole to a large finite value with the sign of
/// the side it is approached from, which the bracketing solver tolerates.
fn h_aux_or_pole(nu: f64, z: f64) -> Result<f64> {
    match h_aux_order(nu, z) {
        Ok(v) => Ok(v),
        Err(Error::Pole { .. }) => {
            let (j, j1) = bessel_j_pair(nu, z)?;
            let v = nu - z * j1 / j;
            Ok(if v.is_finite() { v } else { f64::MAX.copysign(-j1 * j) })
        }
        Err(e) => Err(e),
    }
}

/// λ_{k,ℓ}(κ) = α² + κ²/α² with α = α_{k,|ℓ|}(κ).
pub fn eigenvalue(mode: ModeIndex, kappa: f64) -> Result<f64> {
    if mode.ell == 0 {
        return Err(Error::InvalidMode("the alpha = sqrt(kappa) branch carries no eigenvalue".into()));
    }
    let root = alpha_root(mode.with_ell(mode.ell.abs()), kappa)?;
    Ok(root.lambda())
}

/// Which family of zero products a crossing point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossingFamily {
    /// j_{ν_k,n} j_{ν_k,ℓ+n}
    SameOrder,
    /// j_{ν_k+1,n} j_{ν_k+1,ℓ+n}
    NextOrder,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingPoint {
    pub kappa: f64,
    pub family: CrossingFamily,
    pub n: usize,
    pub label: String,
}

/// κ values where α_{k,ℓ} and α_{k+1,ℓ} meet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingSet {
    pub k: u32,
    pub ell: usize,
    pub dim: u32,
    pub points: Vec<CrossingPoint>,
}

impl CrossingSet {
    pub fn kappas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.kappa).collect()
    }
}

pub fn crossing_kappas(k: u32, ell: usize, n_max: usize, dim: u32) -> Result<CrossingSet> {
    if ell == 0 || n_max == 0 {
        return Err(Error::InvalidMode("ell and n_max must be >= 1".into()));
    }
    let mode = ModeIndex::new(k + 1, ell as i32, dim)?;
    let nu = mode.order() - 1.0;
    let mut points = Vec::with_capacity(2 * n_max);
    for n in 1..=n_max {
        for (order, family) in [(nu, CrossingFamily::SameOrder), (nu + 1.0, CrossingFamily::NextOrder)] {
            points.push(CrossingPoint {
                kappa: bessel_zero(order, n)? * bessel_zero(order, ell + n)?,
                family,
                n,
                label: product_label(order, n, ell + n),
            });
        }
    }
    points.sort_by(|a, b| a.kappa.total_cmp(&b.kappa));
    Ok(CrossingSet { k, ell, dim, points })
}

/// Slopes ∂_κ α_{k,1} and ∂_κ α_{k+1,1} at κ = j_{ν,n} j_{ν,n+1}:
/// 1/(2 j_{ν,n}) and j_{ν,n} / (j_{ν,n}² + j_{ν,n+1}²).
pub fn crossing_slopes(k: u32, n: usize, dim: u32) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Domain("crossing index n starts at 1".into()));
    }
    let nu = ModeIndex::new(k, 1, dim)?.order();
    let a = bessel_zero(nu, n)?;
    let b = bessel_zero(nu, n + 1)?;
    Ok((1.0 / (2.0 * a), a / (a * a + b * b)))
}

/// λ₁(κ) together with every first branch attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstEigenvalue {
    pub kappa: f64,
    pub lambda1: f64,
    pub alpha: f64,
    pub attaining: Vec<ModeIndex>,
}

/// Which first-eigenvalue crossing κ sits on, if any: `Some((0, n))` for
/// κ ≈ j_{ν₀,n} j_{ν₀,n+1} and `Some((1, n))` for κ ≈ j_{ν₁,n} j_{ν₁,n+1}.
pub fn first_crossing_at(kappa: f64, dim: u32) -> Result<Option<(u32, usize)>> {
    if kappa <= 0.0 {
        return Ok(None);
    }
    for k in 0..2u32 {
        let nu = ModeIndex::new(k, 1, dim)?.order();
        if let ProductPosition::At(n) = locate_in_products(nu, 1, kappa)? {
            return Ok(Some((k, n)));
        }
    }
    Ok(None)
}

/// λ₁(κ) = ᾱ² + κ²/ᾱ² with ᾱ = min(α_{0,1}, α_{1,1}).
pub fn first_eigenvalue(kappa: f64, dim: u32) -> Result<FirstEigenvalue> {
    let roots = (0..=3u32)
        .map(|k| alpha_root(ModeIndex::new(k, 1, dim)?, kappa).map(|r| r.alpha))
        .collect::<Result<Vec<_>>>()?;
    let alpha = roots[0].min(roots[1]);
    let mut attaining: Vec<ModeIndex> = roots
        .iter()
        .enumerate()
        .filter(|(_, &a)| a <= alpha * (1.0 + 1e-10))
        .map(|(k, _)| ModeIndex { k: k as u32, ell: 1, dim })
        .collect();
    if let Some((family, _)) = first_crossing_at(kappa, dim)? {
        let top = if family == 0 { 1 } else { 2 };
        for k in 0..=top {
            let m = ModeIndex { k, ell: 1, dim };
            if !attaining.contains(&m) {
                attaining.push(m);
            }
        }
        attaining.sort();
    }
    Ok(FirstEigenvalue { kappa, lambda1: lambda_from_alpha(alpha, kappa), alpha, attaining })
}

#[cfg(test)]
mod tests {
    use super::*;

    const J01: f64 = 2.404_825_557_695_773;
    const J02: f64 = 5.520_078_110_286_311;
    const J11: f64 = 3.831_705_970_207_512;
    const J12: f64 = 7.015_586_669_815_619;

    fn m(k: u32, ell: i32) -> ModeIndex {
        ModeIndex::planar(k, ell)
    }

    #[test]
    fn vanishes_on_the_diagonal() {
        for &kappa in &[0.5, 4.0, 30.0, 200.0] {
            for k in 0..4 {
                assert!(f_det(m(k, 1), kappa, kappa.sqrt()).unwrap().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vanishes_at_first_crossing() {
        assert!(f_det(m(0, 1), J01 * J02, J02).unwrap().abs() < 1e-12);
    }

    #[test]
    fn raised_form_agrees() {
        let a = f_det(m(0, 1), 1.0, 3.9).unwrap();
        let b = f_det_raised(m(0, 1), 1.0, 3.9).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn d_det_matches_h_tilde() {
        let d = d_det(m(1, 1), 0.5).unwrap();
        let h = h_tilde(m(1, 1), 0.5).unwrap();
        assert!((d + h / 0.5).abs() < 1e-12);
        assert!(d_det(m(0, 1), 1.0).unwrap() < 0.0);
        assert!(d_det(m(2, 1), 5.135_622_301_840_683).unwrap() < 0.0);
    }

    #[test]
    fn h_functions_near_origin() {
        assert!(h_tilde(m(0, 1), 1e-8).unwrap().abs() < 1e-15);
        for k in 0..4 {
            assert!((h_aux(m(k, 1), 1e-8).unwrap() - k as f64).abs() < 1e-12);
        }
        assert!(h_tilde(m(1, 1), 3.0).unwrap() > h_tilde(m(1, 1), 2.0).unwrap());
    }

    #[test]
    fn brackets() {
        let (lo, hi) = bracket_alpha(m(0, 1), 1.0).unwrap();
        assert!((lo - J01).abs() < 1e-12 && (hi - J02).abs() < 1e-12);
        let (lo, hi) = bracket_alpha(m(0, 2), 30.0).unwrap();
        assert!((lo - 8.653_727_912_911_013).abs() < 1e-12);
        assert!((hi - 11.791_534_439_014_281).abs() < 1e-12);
        let (lo, hi) = bracket_alpha(m(1, 1), 100.0).unwrap();
        assert!((lo - 10.173_468_135_062_722).abs() < 1e-12);
        assert!((hi - 13.323_691_936_314_223).abs() < 1e-12);
        assert!(matches!(bracket_alpha(m(0, 1), J01 * J02), Err(Error::DegenerateKappa { .. })));
    }

    #[test]
    fn root_at_product_is_the_bessel_zero() {
        let r = alpha_root(m(1, 1), J11 * J12).unwrap();
        assert!(r.degenerate);
        assert!((r.alpha - J12).abs() < 1e-14);
        let s = alpha_root_with(m(1, 1), J11 * J12, CrossingPolicy::Straddle).unwrap();
        assert!((s.alpha - J12).abs() < 1e-9);
        let t = alpha_root(m(0, 1), J11 * J12).unwrap();
        assert!(!t.degenerate);
        assert!((t.alpha - J12).abs() < 1e-12);
    }

    #[test]
    fn reflected_branch() {
        let up = alpha_root(m(0, 1), 4.0).unwrap();
        let down = alpha_root(m(0, -1), 4.0).unwrap();
        assert!((down.alpha - 4.0 / up.alpha).abs() < 1e-15);
        assert!(down.alpha < 2.0 && up.alpha > 2.0);
        assert_eq!(alpha_root(m(0, 0), 4.0).unwrap().alpha, 2.0);
    }

    #[test]
    fn small_kappa_limit() {
        let r = alpha_root(m(0, 1), 1e-6).unwrap();
        assert!((r.alpha - J11).abs() < 1e-3);
        let r = alpha_root(m(0, 1), 0.0).unwrap();
        assert!((r.alpha - J11).abs() < 1e-14);
        assert!((eigenvalue(m(0, 1), 0.0).unwrap() - J11 * J11).abs() < 1e-12);
    }

    #[test]
    fn eigenvalue_bounded_below() {
        for &kappa in &[0.1, 3.0, 13.0, 77.0, 250.0] {
            for k in 0..3 {
                for ell in 1..4 {
                    assert!(eigenvalue(m(k, ell), kappa).unwrap() >= 2.0 * kappa);
                }
            }
        }
        assert!(eigenvalue(m(0, 0), 1.0).is_err());
    }

    #[test]
    fn crossing_set_order() {
        let s = crossing_kappas(0, 1, 2, 2).unwrap();
        let want = [13.274_824_920_093_5, 26.881_665_327_240_7, 47.769_254_024_433_7, 71.372_847_434_140_0];
        for (got, w) in s.kappas().iter().zip(want) {
            assert!((got - w).abs() < 1e-9, "{got} vs {w}");
        }
        assert_eq!(s.points[0].label, "j(0,1)*j(0,2)");
        assert_eq!(s.points[1].family, CrossingFamily::NextOrder);
    }

    #[test]
    fn first_eigenvalue_attaining_sets() {
        assert_eq!(first_eigenvalue(1.0, 2).unwrap().attaining, vec![m(0, 1)]);
        assert_eq!(first_eigenvalue(20.0, 2).unwrap().attaining, vec![m(1, 1)]);
        let tri = first_eigenvalue(J11 * J12, 2).unwrap();
        assert_eq!(tri.attaining, vec![m(0, 1), m(1, 1), m(2, 1)]);
        let pair = first_eigenvalue(J01 * J02, 2).unwrap();
        assert_eq!(pair.attaining, vec![m(0, 1), m(1, 1)]);
    }
}
