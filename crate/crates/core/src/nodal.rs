//! Interior zeros of radial profiles and the first-eigenvalue regime table.
//!
//! With ν₀ = (N−2)/2 and ν₁ = N/2, the products p⁰_n = j_{ν₀,n} j_{ν₀,n+1}
//! and p¹_n = j_{ν₁,n} j_{ν₁,n+1} interlace, p⁰_1 < p¹_1 < p⁰_2 < …, and
//! cut the κ axis into the regimes of λ₁(κ):
//!
//! * [0, p⁰_1): radial, one-signed;
//! * (p¹_n, p⁰_{n+1}): radial with n + 1 nodal regions;
//! * (p⁰_{n+1}, p¹_{n+1}): degree one, R_{1,1} has n zeros, 2(n + 1) regions.

use serde::{Deserialize, Serialize};

use crate::dispersion::{
    first_eigenvalue, locate_in_products, product_label, ModeIndex, ProductPosition, CROSSING_TOLERANCE,
};
use crate::eigenmodes::{bisect, radial_eval, EigenMode, RadialProfile};
use crate::error::{Error, Result};
use crate::special_functions::{bessel_zero, zero_or_origin};

/// Zeros whose slope falls below this are reported as not simple.
pub const SIMPLICITY_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodalReport {
    pub mode: ModeIndex,
    pub kappa: f64,
    pub zero_locations: Vec<f64>,
    /// |R′| at each zero
    pub slopes: Vec<f64>,
    pub count: usize,
    /// None when no prediction applies (ℓ ≠ 1, or κ on a product point)
    pub predicted_count: Option<usize>,
    pub matches: bool,
}

impl NodalReport {
    /// Indices of zeros with |R′| below [`SIMPLICITY_THRESHOLD`].
    pub fn non_simple(&self) -> Vec<usize> {
        self.slopes.iter().enumerate().filter(|(_, &s)| s <= SIMPLICITY_THRESHOLD).map(|(i, _)| i).collect()
    }
}

/// Sign changes of R over the interior of the profile grid, each refined by
/// bisection to ~1e-15 in r. The endpoint r = 1, where R vanishes by the
/// clamped condition, is excluded, as is r = 0 where R vanishes for k ≥ 1.
pub fn count_zeros(profile: &RadialProfile) -> Result<NodalReport> {
    let em = &profile.mode;
    let n = profile.grid.len();
    let mut zeros = Vec::new();
    let mut slopes = Vec::new();
    let inner = 1..n.saturating_sub(1);
    let mut prev: Option<(f64, f64)> = None;
    for i in inner {
        let (r, v) = (profile.grid[i], profile.values[i]);
        if v == 0.0 {
            continue;
        }
        if let Some((pr, pv)) = prev {
            if pv.signum() != v.signum() {
                let z = bisect(|x| radial_eval(em, x), pr, r, pv)?;
                zeros.push(z);
            }
        }
        prev = Some((r, v));
    }
    for &z in &zeros {
        slopes.push(crate::eigenmodes::radial_derivative(em, z)?.abs());
    }
    let predicted_count =
        if em.mode.ell == 1 { predicted_interior_zeros(em.mode.k, em.kappa, em.mode.dim).ok() } else { None };
    let count = zeros.len();
    Ok(NodalReport {
        mode: em.mode,
        kappa: em.kappa,
        zero_locations: zeros,
        slopes,
        count,
        predicted_count,
        matches: predicted_count == Some(count),
    })
}

/// The n ≥ 1 with j_{ν,n−1} j_{ν,n} < κ < j_{ν,n} j_{ν,n+1} (j_{ν,0} = 0).
fn first_branch_interval(k: u32, kappa: f64, dim: u32) -> Result<usize> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be finite and >= 0, got {kappa}")));
    }
    let nu = ModeIndex::new(k, 1, dim)?.order();
    if kappa == 0.0 {
        return Ok(1);
    }
    match locate_in_products(nu, 1, kappa)? {
        ProductPosition::Inside(m) => Ok(m + 1),
        ProductPosition::At(m) => Err(Error::DegenerateKappa {
            kappa,
            product: bessel_zero(nu, m)? * bessel_zero(nu, m + 1)?,
            label: product_label(nu, m, m + 1),
        }),
    }
}

/// n − 1 interior zeros of R_{k,1} for κ ∈ (j_{ν,n−1} j_{ν,n}, j_{ν,n} j_{ν,n+1}).
pub fn predicted_interior_zeros(k: u32, kappa: f64, dim: u32) -> Result<usize> {
    Ok(first_branch_interval(k, kappa, dim)? - 1)
}

/// As [`predicted_interior_zeros`], refusing branches other than ℓ = 1,
/// for which no count is known.
pub fn predicted_zeros_for(mode: ModeIndex, kappa: f64) -> Result<usize> {
    if mode.ell != 1 {
        return Err(Error::UnsupportedBranch(mode.ell));
    }
    predicted_interior_zeros(mode.k, kappa, mode.dim)
}

/// R_{k,1}(j_{ν,i}/α) R_{k,1}(j_{ν,i+1}/α) < 0 for i = 1, …, n − 1.
pub fn verify_sign_alternation(k: u32, kappa: f64, dim: u32) -> Result<bool> {
    let n = first_branch_interval(k, kappa, dim)?;
    if n < 2 {
        return Ok(true);
    }
    let mode = ModeIndex::new(k, 1, dim)?;
    let em = EigenMode::new(mode, kappa)?;
    let nu = mode.order();
    let mut prev = radial_eval(&em, bessel_zero(nu, 1)? / em.alpha)?;
    for i in 2..=n {
        let cur = radial_eval(&em, bessel_zero(nu, i)? / em.alpha)?;
        if !(prev * cur < 0.0) {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

/// Sign of R_{k,1} at the middle of its last arch (j_{ν,n}/α, 1), and the
/// expected sign (−1)^{n+1}.
pub fn last_arch_sign(k: u32, kappa: f64, dim: u32) -> Result<(f64, f64)> {
    let n = first_branch_interval(k, kappa, dim)?;
    let mode = ModeIndex::new(k, 1, dim)?;
    let em = EigenMode::new(mode, kappa)?;
    let start = zero_or_origin(mode.order(), n)? / em.alpha;
    let observed = radial_eval(&em, 0.5 * (start + 1.0))?.signum();
    let expected = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok((observed, expected))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    RadialSimple,
    Degree1,
    CrossingRadialDegree1,
    CrossingTriple,
    Unclassified,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::RadialSimple => "RadialSimple",
            Regime::Degree1 => "Degree1",
            Regime::CrossingRadialDegree1 => "CrossingRadialDegree1",
            Regime::CrossingTriple => "CrossingTriple",
            Regime::Unclassified => "Unclassified",
        }
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, Regime::CrossingRadialDegree1 | Regime::CrossingTriple | Regime::Unclassified)
    }
}

/// A product point j_{ν,n} j_{ν,n+1} bounding a regime interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Boundary {
    pub kappa: f64,
    pub label: String,
    /// 0 for the ν₀ family (radial/degree-1 crossing), 1 for ν₁ (triple)
    pub family: u8,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub kappa: f64,
    pub dim: u32,
    pub regime: Regime,
    pub attaining: Vec<ModeIndex>,
    /// None where the eigenspace dimension is not classified
    pub multiplicity: Option<usize>,
    /// None at crossings, where the eigenspace mixes degrees
    pub nodal_regions: Option<usize>,
    /// enclosing interval; both ends equal the crossing at a crossing
    pub lower: Option<Boundary>,
    pub upper: Option<Boundary>,
    pub eigenspace: String,
}

fn boundary(family: u8, n: usize, dim: u32) -> Result<Boundary> {
    let nu = ModeIndex::new(family as u32, 1, dim)?.order();
    Ok(Boundary { kappa: bessel_zero(nu, n)? * bessel_zero(nu, n + 1)?, label: product_label(nu, n, n + 1), family, n })
}

/// Regime boundaries p⁰_1 < p¹_1 < p⁰_2 < … up to and including the first
/// one above `kappa_max`.
pub fn regime_boundaries(kappa_max: f64, dim: u32) -> Result<Vec<Boundary>> {
    let mut out = Vec::new();
    for n in 1.. {
        for family in 0..2u8 {
            let b = boundary(family, n, dim)?;
            let done = b.kappa > kappa_max;
            out.push(b);
            if done {
                return Ok(out);
            }
        }
    }
    unreachable!()
}

fn describe(regime: Regime, dim: u32) -> String {
    match (regime, dim) {
        (Regime::RadialSimple, _) => "c1 R01(r)".into(),
        (Regime::Degree1, 2) => "R11(r) (c1 cos(theta) + c2 sin(theta))".into(),
        (Regime::Degree1, _) => "R11(r) S(x/|x|), S a spherical harmonic of degree 1".into(),
        (Regime::CrossingRadialDegree1, _) => "c1 R01(r) + R11(r) (c2 cos(theta) + c3 sin(theta))".into(),
        (Regime::CrossingTriple, _) => "c1 R01(r) + R11(r) (c2 cos(theta) + c3 sin(theta)) \
             + R21(r) (c4 cos(2 theta) + c5 sin(2 theta))"
            .into(),
        (Regime::Unclassified, _) => "crossing of first branches; eigenspace not classified".into(),
    }
}

/// Classify λ₁ at κ: regime, attaining branches, multiplicity and number
/// of nodal regions. Attaining branches are cross-checked against
/// [`first_eigenvalue`].
pub fn classify_regime(kappa: f64, dim: u32) -> Result<RegimeReport> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be finite and >= 0, got {kappa}")));
    }
    ModeIndex::new(1, 1, dim)?;
    let mut lower: Option<Boundary> = None;
    let mut upper: Option<Boundary> = None;
    let mut at: Option<Boundary> = None;
    'scan: for n in 1.. {
        for family in 0..2u8 {
            let b = boundary(family, n, dim)?;
            if (kappa - b.kappa).abs() <= CROSSING_TOLERANCE * (1.0 + kappa) {
                at = Some(b);
                break 'scan;
            }
            if b.kappa > kappa {
                upper = Some(b);
                break 'scan;
            }
            lower = Some(b);
        }
    }

    let (regime, multiplicity, nodal_regions) = if let Some(b) = &at {
        match (b.family, dim) {
            (0, 2) => (Regime::CrossingRadialDegree1, Some(3), None),
            (1, 2) => (Regime::CrossingTriple, Some(5), None),
            _ => (Regime::Unclassified, None, None),
        }
    } else {
        match &lower {
            None => (Regime::RadialSimple, Some(1), Some(1)),
            // (p¹_n, p⁰_{n+1})
            Some(b) if b.family == 1 => (Regime::RadialSimple, Some(1), Some(b.n + 1)),
            // (p⁰_{n+1}, p¹_{n+1})
            Some(b) => (Regime::Degree1, Some(dim as usize), Some(2 * b.n)),
        }
    };
    if let Some(b) = at {
        lower = Some(b.clone());
        upper = Some(b);
    }

    let first = first_eigenvalue(kappa, dim)?;
    let expected: Vec<u32> = match regime {
        Regime::RadialSimple => vec![0],
        Regime::Degree1 => vec![1],
        Regime::CrossingRadialDegree1 => vec![0, 1],
        Regime::CrossingTriple => vec![0, 1, 2],
        Regime::Unclassified => first.attaining.iter().map(|m| m.k).collect(),
    };
    let found: Vec<u32> = first.attaining.iter().map(|m| m.k).collect();
    if found != expected {
        return Err(Error::Inconsistent(format!(
            "kappa = {kappa}: regime {} expects degrees {expected:?}, first eigenvalue attained by {found:?}",
            regime.as_str()
        )));
    }

    Ok(RegimeReport {
        kappa,
        dim,
        regime,
        attaining: first.attaining,
        multiplicity,
        nodal_regions,
        lower,
        upper,
        eigenspace: describe(regime, dim),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenmodes::radial_profile;

    const P01: f64 = 13.274_824_920_093_5;
    const P11: f64 = 26.881_665_327_240_7;

    fn report(k: u32, kappa: f64) -> NodalReport {
        let em = EigenMode::new(ModeIndex::planar(k, 1), kappa).unwrap();
        count_zeros(&radial_profile(&em, 201).unwrap()).unwrap()
    }

    #[test]
    fn zero_counts() {
        assert_eq!(report(0, 1.0).count, 0);
        assert_eq!(report(1, 20.0).count, 0);
        let r = report(1, 50.0);
        assert_eq!(r.count, 1);
        assert!(r.matches);
        assert!(r.non_simple().is_empty());
        assert_eq!(report(0, 60.0).count, 2);
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_interior_zeros(0, 5.0, 2).unwrap(), 0);
        assert_eq!(predicted_interior_zeros(1, 50.0, 2).unwrap(), 1);
        assert_eq!(predicted_interior_zeros(0, 60.0, 2).unwrap(), 2);
        assert!(matches!(predicted_interior_zeros(0, P01, 2), Err(Error::DegenerateKappa { .. })));
        assert!(matches!(predicted_zeros_for(ModeIndex::planar(0, 2), 5.0), Err(Error::UnsupportedBranch(2))));
    }

    #[test]
    fn alternation() {
        assert!(verify_sign_alternation(0, 60.0, 2).unwrap());
        assert!(verify_sign_alternation(1, 50.0, 2).unwrap());
        assert!(verify_sign_alternation(0, 5.0, 2).unwrap());
    }

    #[test]
    fn last_arch() {
        for &kappa in &[5.0, 30.0, 60.0, 110.0] {
            let (obs, exp) = last_arch_sign(0, kappa, 2).unwrap();
            assert_eq!(obs, exp, "kappa {kappa}");
        }
    }

    #[test]
    fn regimes() {
        let r = classify_regime(1.0, 2).unwrap();
        assert_eq!((r.regime, r.multiplicity, r.nodal_regions), (Regime::RadialSimple, Some(1), Some(1)));
        let r = classify_regime(30.0, 2).unwrap();
        assert_eq!((r.regime, r.nodal_regions), (Regime::RadialSimple, Some(2)));
        let r = classify_regime(120.0, 2).unwrap();
        assert_eq!((r.regime, r.multiplicity, r.nodal_regions), (Regime::Degree1, Some(2), Some(6)));
        let r = classify_regime(P01, 2).unwrap();
        assert_eq!((r.regime, r.multiplicity), (Regime::CrossingRadialDegree1, Some(3)));
        let r = classify_regime(P11, 2).unwrap();
        assert_eq!((r.regime, r.multiplicity), (Regime::CrossingTriple, Some(5)));
        assert_eq!(r.lower.as_ref().unwrap().label, "j(1,1)*j(1,2)");
    }

    #[test]
    fn boundaries_in_three_dimensions() {
        let b = regime_boundaries(10.0, 3).unwrap();
        let pi = std::f64::consts::PI;
        assert!((b[0].kappa - 2.0 * pi * pi).abs() < 1e-9);
        let r = classify_regime(b[0].kappa, 3).unwrap();
        assert_eq!(r.regime, Regime::Unclassified);
        assert_eq!(r.multiplicity, None);
        let r = classify_regime(25.0, 3).unwrap();
        assert_eq!((r.regime, r.multiplicity), (Regime::Degree1, Some(3)));
    }
}
