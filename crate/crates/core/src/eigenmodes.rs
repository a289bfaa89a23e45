//! Eigenfunctions u = R_{k,ℓ}(r) · (angular factor of degree k).
//!
//! For κ > 0 the radial part is
//!
//! ```text
//! R(r) = r^{−s} [c J_ν(αr) + d J_ν(βr)],   β = κ/α, s = (N−2)/2, ν = k + s,
//! ```
//!
//! and for κ = 0 the second component becomes the harmonic term r^k.
//! Coefficients are scaled so that max_{[0,1]} |R| = 1 and R is positive
//! next to the origin.

use serde::{Deserialize, Serialize};

use crate::dd::DoubleDouble;
use crate::dispersion::{alpha_root, lambda_from_alpha, AlphaRoot, ModeIndex};
use crate::error::{Error, Result};
use crate::gamma::gamma_shifted;
use crate::special_functions::{bessel_j_pair, bessel_j_scaled, bessel_j_scaled_extended};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// max |R| = 1 on [0, 1], R > 0 on a right neighbourhood of 0
    MaxAbsUnit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenMode {
    pub mode: ModeIndex,
    pub kappa: f64,
    pub alpha: f64,
    pub lambda: f64,
    /// weight of r^{−s} J_ν(αr)
    pub c: f64,
    /// weight of r^{−s} J_ν(βr), or of r^k when κ = 0
    pub d: f64,
    pub normalization: Normalization,
}

impl EigenMode {
    /// Eigenfunction on branch (k, ℓ), ℓ ≥ 1, at κ ≥ 0.
    pub fn new(mode: ModeIndex, kappa: f64) -> Result<Self> {
        require_upper_branch(mode)?;
        let root = alpha_root(mode, kappa)?;
        Self::from_root(&root)
    }

    pub fn from_root(root: &AlphaRoot) -> Result<Self> {
        Self::with_alpha(root.mode, root.kappa, root.alpha)
    }

    /// Profile built from an arbitrary α, solving only the better
    /// conditioned boundary row. Used to probe how residuals react to a
    /// wrong root; for a true root both rows hold.
    pub fn with_alpha(mode: ModeIndex, kappa: f64, alpha: f64) -> Result<Self> {
        require_upper_branch(mode)?;
        if !(kappa >= 0.0) || !(alpha > 0.0) {
            return Err(Error::Domain(format!("need kappa >= 0 and alpha > 0, got {kappa}, {alpha}")));
        }
        let (c, d) = null_vector(mode, kappa, alpha)?;
        let mut em = Self {
            mode,
            kappa,
            alpha,
            lambda: lambda_from_alpha(alpha, kappa),
            c,
            d,
            normalization: Normalization::MaxAbsUnit,
        };
        em.normalize()?;
        Ok(em)
    }

    pub fn beta(&self) -> f64 {
        self.kappa / self.alpha
    }

    fn order(&self) -> f64 {
        self.mode.order()
    }

    fn normalize(&mut self) -> Result<()> {
        let sign = self.leading_sign()?;
        let peak = self.peak_abs()?;
        if !(peak > 0.0) || !peak.is_finite() {
            return Err(Error::DegenerateSystem(format!("profile of {} vanishes", self.mode)));
        }
        self.c *= sign / peak;
        self.d *= sign / peak;
        Ok(())
    }

    /// Sign of R on (0, ε): the sign of the r^k coefficient of its expansion.
    fn leading_sign(&self) -> Result<f64> {
        let nu = self.order();
        let lead = if self.kappa == 0.0 {
            self.c * self.alpha.powf(nu) * 0.5_f64.powf(nu) / gamma_shifted(nu) + self.d
        } else {
            self.c + self.d * (self.beta() / self.alpha).powf(nu)
        };
        let size = if self.kappa == 0.0 {
            self.c.abs() * self.alpha.powf(nu) * 0.5_f64.powf(nu) / gamma_shifted(nu) + self.d.abs()
        } else {
            self.c.abs() + self.d.abs() * (self.beta() / self.alpha).powf(nu)
        };
        if lead.abs() > 1e-8 * size {
            return Ok(lead.signum());
        }
        // leading terms cancel: use the first clearly nonzero sample
        let n = sample_count(self.alpha);
        for i in 1..n {
            let v = radial_eval(self, i as f64 / n as f64)?;
            if v.abs() > 1e-6 * size {
                return Ok(v.signum());
            }
        }
        Err(Error::DegenerateSystem(format!("no leading sign for {}", self.mode)))
    }

    /// max |R| over [0, 1], sharpened at interior critical points.
    fn peak_abs(&self) -> Result<f64> {
        let n = sample_count(self.alpha);
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let mut peak = 0.0_f64;
        let mut prev_dr = radial_derivative(self, 0.0)?;
        for w in grid.windows(2) {
            peak = peak.max(radial_eval(self, w[0])?.abs());
            let dr = radial_derivative(self, w[1])?;
            if prev_dr != 0.0 && dr != 0.0 && prev_dr.signum() != dr.signum() {
                let r = bisect(|r| radial_derivative(self, r), w[0], w[1], prev_dr)?;
                peak = peak.max(radial_eval(self, r)?.abs());
            }
            prev_dr = dr;
        }
        Ok(peak.max(radial_eval(self, 1.0)?.abs()))
    }
}

fn require_upper_branch(mode: ModeIndex) -> Result<()> {
    if mode.ell < 1 {
        return Err(Error::InvalidMode(format!(
            "eigenfunctions are indexed by ell >= 1 (alpha_(k,-l) gives the same function), got {}",
            mode.ell
        )));
    }
    ModeIndex::new(mode.k, mode.ell, mode.dim).map(|_| ())
}

/// Sampling density used for peak search and profiles: 64 points per
/// half-period of the fastest oscillation.
fn sample_count(alpha: f64) -> usize {
    ((64.0 * alpha / std::f64::consts::PI).ceil() as usize).max(64)
}

/// Bisection on a function with a sign change on [a, b]; `fa` is f(a).
pub(crate) fn bisect<F>(f: F, mut a: f64, mut b: f64, fa: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let sa = fa.signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return Ok(m);
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Unnormalized nontrivial (c, d) for the boundary rows at r = 1.
///
/// κ > 0: rows (J_ν(α), J_ν(β)) and (αJ'_ν(α), βJ'_ν(β)); the r^{−s}
/// prefactor drops out once R(1) = 0. The row with the larger norm (the
/// derivative row measured in units of α) fixes the null vector.
/// κ = 0: R = c r^{−s}J_ν(αr) + d r^k and R(1) = 0 gives (1, −J_ν(α)).
fn null_vector(mode: ModeIndex, kappa: f64, alpha: f64) -> Result<(f64, f64)> {
    let nu = mode.order();
    let (ja, ja1) = bessel_j_pair(nu, alpha)?;
    if kappa == 0.0 {
        return Ok((1.0, -ja));
    }
    let beta = kappa / alpha;
    let (jb, jb1) = bessel_j_pair(nu, beta)?;
    let dja = -ja1 + nu / alpha * ja;
    let djb = -jb1 + nu / beta * jb;
    let value_row = ja.hypot(jb);
    let slope_row = (alpha * dja).hypot(beta * djb) / alpha;
    if value_row.max(slope_row) < 1e-300 {
        return Err(Error::DegenerateSystem(format!("both boundary rows vanish for {mode} at alpha = {alpha}")));
    }
    if value_row >= slope_row {
        Ok((jb, -ja))
    } else {
        Ok((beta * djb, -alpha * dja))
    }
}

/// (c, d) for the branch root, normalized as in [`EigenMode`].
pub fn mode_coefficients(mode: ModeIndex, kappa: f64, root: &AlphaRoot) -> Result<(f64, f64)> {
    if root.mode.k != mode.k || root.mode.dim != mode.dim || root.kappa != kappa {
        return Err(Error::InvalidMode(format!(
            "root for {} at kappa = {} does not match {mode} at kappa = {kappa}",
            root.mode, root.kappa
        )));
    }
    let em = EigenMode::with_alpha(mode, kappa, root.alpha)?;
    Ok((em.c, em.d))
}

/// r^{−s} J_ν(γr) = γ^s · (γr)^{−s} J_ν(γr).
fn component(nu: f64, s: f64, gamma: f64, r: f64) -> Result<f64> {
    Ok(gamma.powf(s) * bessel_j_scaled(nu, s, gamma * r)?)
}

/// d/dr [r^{−s} J_ν(γr)] = γ^{s+1} [k (γr)^{−s−1} J_ν(γr) − (γr)^{−s} J_{ν+1}(γr)].
fn component_derivative(nu: f64, s: f64, gamma: f64, r: f64) -> Result<f64> {
    let z = gamma * r;
    let k = (nu - s).round();
    let first = if k > 0.0 { k * bessel_j_scaled(nu, s + 1.0, z)? } else { 0.0 };
    Ok(gamma.powf(s + 1.0) * (first - bessel_j_scaled(nu + 1.0, s, z)?))
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("radius must lie in [0, 1], got {r}")));
    }
    Ok(())
}

/// R_{k,ℓ}(r), finite at r = 0 in every dimension.
pub fn radial_eval(em: &EigenMode, r: f64) -> Result<f64> {
    check_radius(r)?;
    let nu = em.order();
    let s = em.mode.shift();
    let first = em.c * component(nu, s, em.alpha, r)?;
    let second = if em.kappa == 0.0 { em.d * r.powi(em.mode.k as i32) } else { em.d * component(nu, s, em.beta(), r)? };
    Ok(first + second)
}

/// R′_{k,ℓ}(r), analytic.
pub fn radial_derivative(em: &EigenMode, r: f64) -> Result<f64> {
    check_radius(r)?;
    let nu = em.order();
    let s = em.mode.shift();
    let first = em.c * component_derivative(nu, s, em.alpha, r)?;
    let second = if em.kappa == 0.0 {
        let k = em.mode.k as i32;
        if k == 0 {
            0.0
        } else {
            em.d * k as f64 * r.powi(k - 1)
        }
    } else {
        em.d * component_derivative(nu, s, em.beta(), r)?
    };
    Ok(first + second)
}

/// R_{k,ℓ}(r) in double-double for an exactly representable radius.
/// Needs αr inside the series regime.
pub fn radial_eval_extended(em: &EigenMode, r: f64) -> Result<DoubleDouble> {
    check_radius(r)?;
    let nu = em.order();
    let s = em.mode.shift();
    let part = |gamma: f64| -> Result<DoubleDouble> {
        let z = DoubleDouble::new(gamma) * DoubleDouble::new(r);
        Ok(bessel_j_scaled_extended(nu, s, z)? * gamma.powf(s))
    };
    let first = part(em.alpha)? * em.c;
    let second = if em.kappa == 0.0 { DoubleDouble::new(r).powi(em.mode.k) * em.d } else { part(em.beta())? * em.d };
    Ok(first + second)
}

/// u(r, θ) = R(r)(c₁ cos kθ + c₂ sin kθ). In dimension N ≥ 3 only k = 0
/// and k = 1 are served; for k = 1, θ is the angle to the caller's axis in
/// a plane through it and (c₁, c₂) pick the degree-1 harmonic there.
pub fn eval_eigenfunction(em: &EigenMode, r: f64, theta: f64, angular: (f64, f64)) -> Result<f64> {
    let k = em.mode.k;
    if em.mode.dim >= 3 && k >= 2 {
        return Err(Error::UnsupportedAngularDegree { k, dim: em.mode.dim });
    }
    let radial = radial_eval(em, r)?;
    if k == 0 {
        return Ok(radial);
    }
    let kt = k as f64 * theta;
    Ok(radial * (angular.0 * kt.cos() + angular.1 * kt.sin()))
}

/// (|R(1)|, |R′(1)|).
pub fn boundary_residual(em: &EigenMode) -> Result<(f64, f64)> {
    Ok((radial_eval(em, 1.0)?.abs(), radial_derivative(em, 1.0)?.abs()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub mode: EigenMode,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
}

/// Uniform `samples`-point grid on [0, 1] merged with a dense grid of at
/// least ⌈64α/π⌉ intervals, with values and derivatives.
pub fn radial_profile(em: &EigenMode, samples: usize) -> Result<RadialProfile> {
    if samples < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {samples}")));
    }
    let dense = sample_count(em.alpha);
    let mut grid: Vec<f64> = (0..samples)
        .map(|i| i as f64 / (samples - 1) as f64)
        .chain((0..=dense).map(|i| i as f64 / dense as f64))
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    *grid.last_mut().expect("grid is non-empty") = 1.0;
    let values = grid.iter().map(|&r| radial_eval(em, r)).collect::<Result<Vec<_>>>()?;
    let derivatives = grid.iter().map(|&r| radial_derivative(em, r)).collect::<Result<Vec<_>>>()?;
    Ok(RadialProfile { mode: em.clone(), grid, values, derivatives })
}

/// Boundary system on the coincident branch α = β = √κ, where
/// R = r^{−s}[c J_ν(√κ r) + d r J'_ν(√κ r)]:
/// rows (J, J′) and (√κ J′, J′ + √κ J″) at √κ.
pub fn coincident_branch_system(mode: ModeIndex, kappa: f64) -> Result<[[f64; 2]; 2]> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    let nu = mode.order();
    let a = kappa.sqrt();
    let (j, j1) = bessel_j_pair(nu, a)?;
    let dj = -j1 + nu / a * j;
    let ddj = -dj / a - (1.0 - nu * nu / (a * a)) * j;
    Ok([[j, dj], [a * dj, dj + a * ddj]])
}

/// Determinant of [`coincident_branch_system`]; it never vanishes, so the
/// α = √κ branch carries no eigenfunction.
pub fn coincident_branch_determinant(mode: ModeIndex, kappa: f64) -> Result<f64> {
    let m = coincident_branch_system(mode, kappa)?;
    Ok(m[0][0] * m[1][1] - m[0][1] * m[1][0])
}
