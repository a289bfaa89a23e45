//! Positive zeros j_{ν,ℓ} of J_ν.
//!
//! Zeros are located sequentially: a unit-step sign scan brackets the next
//! zero (consecutive zeros are more than 3 apart for every ν ≥ 0), then a
//! Newton iteration seeded by McMahon's expansion refines it, falling back
//! to bisection whenever a step leaves the bracket.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::bessel::{bessel_j_pair, check_order, Order, MAX_ARGUMENT};
use crate::error::{Error, Result};

/// Largest zero index served.
pub const MAX_ZERO_INDEX: usize = 200;

/// First `count` positive zeros of J_ν.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub nu: Order,
    pub zeros: Vec<f64>,
}

impl ZeroTable {
    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    /// j_{ν,ℓ} with 1-based ℓ.
    pub fn get(&self, ell: usize) -> Option<f64> {
        ell.checked_sub(1).and_then(|i| self.zeros.get(i).copied())
    }
}

/// McMahon's large-zero expansion.
pub fn mcmahon_guess(nu: f64, ell: usize) -> f64 {
    let b = (ell as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * b;
    b - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e.powi(5))
}

fn j_and_prime(nu: f64, x: f64) -> Result<(f64, f64)> {
    let (j, j1) = bessel_j_pair(nu, x)?;
    Ok((j, -j1 + nu / x * j))
}

/// Refine the single zero inside `(a, b)` where J_ν changes sign.
fn refine(nu: f64, mut a: f64, mut b: f64, guess: f64) -> Result<f64> {
    let fa = bessel_j_pair(nu, a)?.0;
    let sign_a = fa.signum();
    let mut x = if guess > a && guess < b { guess } else { 0.5 * (a + b) };
    for _ in 0..200 {
        let (j, jp) = j_and_prime(nu, x)?;
        if j == 0.0 {
            return Ok(x);
        }
        if j.signum() == sign_a {
            a = x;
        } else {
            b = x;
        }
        let tol = 1e-13 * (1.0 + x.abs());
        let newton = x - j / jp;
        if jp != 0.0 && newton >= a && newton <= b {
            let step = (newton - x).abs();
            x = newton;
            if step < tol {
                return Ok(x);
            }
        } else {
            x = 0.5 * (a + b);
            if b - a < tol {
                return Ok(x);
            }
        }
    }
    Err(Error::NonConvergence(format!("zero of J_{nu} in ({a}, {b})")))
}

/// Continue the zero sequence of J_ν from `known` until it holds `count` entries.
fn extend_zeros(nu: f64, known: &[f64], count: usize) -> Result<Vec<f64>> {
    let mut zeros = known.to_vec();
    while zeros.len() < count {
        let ell = zeros.len() + 1;
        let start = match zeros.last() {
            Some(&z) => z + 3.0,
            None => nu.max(0.5),
        };
        // J_ν(start) has the sign of the arch preceding the next zero.
        let sign0 = bessel_j_pair(nu, start)?.0.signum();
        let mut lo = start;
        let mut hi = start + 1.0;
        loop {
            if hi > MAX_ARGUMENT {
                return Err(Error::Range(format!("zero {ell} of J_{nu} exceeds {MAX_ARGUMENT}")));
            }
            let v = bessel_j_pair(nu, hi)?.0;
            if v.signum() != sign0 || v == 0.0 {
                break;
            }
            lo = hi;
            hi += 1.0;
        }
        zeros.push(refine(nu, lo, hi, mcmahon_guess(nu, ell))?);
    }
    Ok(zeros)
}

type Cache = RwLock<HashMap<u64, Arc<Vec<f64>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared list holding at least `count` zeros of J_ν. Entries are computed
/// deterministically from their predecessor, so concurrent extensions agree.
pub(crate) fn cached_zeros(nu: f64, count: usize) -> Result<Arc<Vec<f64>>> {
    check_order(nu)?;
    if count == 0 || count > MAX_ZERO_INDEX {
        return Err(Error::Domain(format!("zero index must be in 1..={MAX_ZERO_INDEX}, got {count}")));
    }
    let key = nu.to_bits();
    let existing = {
        let map = cache().read().unwrap_or_else(|e| e.into_inner());
        map.get(&key).cloned()
    };
    if let Some(list) = &existing {
        if list.len() >= count {
            return Ok(Arc::clone(list));
        }
    }
    let base: &[f64] = existing.as_deref().map(|v| v.as_slice()).unwrap_or(&[]);
    let fresh = Arc::new(extend_zeros(nu, base, count)?);
    let mut map = cache().write().unwrap_or_else(|e| e.into_inner());
    let entry = map.entry(key).or_insert_with(|| Arc::clone(&fresh));
    if entry.len() < fresh.len() {
        *entry = Arc::clone(&fresh);
    }
    Ok(fresh)
}

/// j_{ν,ℓ}, the ℓ-th positive zero of J_ν (ℓ ≥ 1).
pub fn bessel_zero(nu: f64, ell: usize) -> Result<f64> {
    if ell == 0 {
        return Err(Error::Domain("zero index starts at 1".into()));
    }
    Ok(cached_zeros(nu, ell)?[ell - 1])
}

/// j_{ν,ℓ} with the convention j_{ν,0} = 0.
pub(crate) fn zero_or_origin(nu: f64, ell: usize) -> Result<f64> {
    if ell == 0 {
        Ok(0.0)
    } else {
        bessel_zero(nu, ell)
    }
}

pub fn zero_table(nu: f64, count: usize) -> Result<ZeroTable> {
    let order = Order::new(nu)?;
    let zeros = cached_zeros(nu, count)?;
    Ok(ZeroTable { nu: order, zeros: zeros[..count].to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::bessel::bessel_j;

    #[test]
    fn first_zeros_of_low_orders() {
        let cases = [
            (0.0, 1, 2.404_825_557_695_773),
            (0.0, 4, 11.791_534_439_014_281),
            (1.0, 1, 3.831_705_970_207_512),
            (2.0, 3, 11.619_841_172_149_059),
            (1.5, 1, 4.493_409_457_909_064),
            (2.5, 1, 5.763_459_196_894_55),
        ];
        for (nu, ell, want) in cases {
            let z = bessel_zero(nu, ell).unwrap();
            assert!((z - want).abs() < 1e-12, "j({nu},{ell}) = {z}");
        }
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        for m in 1..=50 {
            let z = bessel_zero(0.5, m).unwrap();
            assert!((z - m as f64 * PI).abs() < 1e-11, "m={m}: {z}");
        }
    }

    #[test]
    fn table_is_increasing_and_vanishes() {
        let t = zero_table(3.7, 40).unwrap();
        assert_eq!(t.count(), 40);
        for w in t.zeros.windows(2) {
            assert!(w[1] > w[0] + 3.0);
        }
        for &z in &t.zeros {
            assert!(bessel_j(3.7, z).unwrap().abs() < 1e-13);
        }
    }

    #[test]
    fn deep_zeros_stay_in_range() {
        let z = bessel_zero(0.0, 200).unwrap();
        assert!((z - mcmahon_guess(0.0, 200)).abs() < 1e-9);
        let z = bessel_zero(60.0, 200).unwrap();
        assert!(z < MAX_ARGUMENT);
        assert!(bessel_zero(0.0, 201).is_err());
        assert!(bessel_zero(0.0, 0).is_err());
    }

    #[test]
    fn get_is_one_based() {
        let t = zero_table(0.0, 2).unwrap();
        assert_eq!(t.get(0), None);
        assert_eq!(t.get(1), Some(t.zeros[0]));
        assert_eq!(t.get(3), None);
    }
}
