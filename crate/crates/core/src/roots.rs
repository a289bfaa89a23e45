//! Bracketed root finding for increasing functions with poles at the ends.

use crate::error::{Error, Result};

/// Root of an increasing function on `(lo, hi)` whose limits at the two
/// ends are −∞ and +∞. The endpoints are never evaluated.
///
/// Bisection until both sides carry finite values, then Illinois-modified
/// regula falsi; a plain bisection step is forced when three updates in a row fail
/// to halve the bracket. Terminates when the bracket is narrower than
/// `rel_tol · |x|`.
pub fn solve_increasing<F>(mut f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("invalid bracket ({lo}, {hi})")));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f64::NEG_INFINITY;
    let mut fb = f64::INFINITY;
    // which end was kept on the previous update: -1 = a moved, +1 = b moved
    let mut last_side = 0i8;
    let mut width = b - a;
    let mut stalled = 0u8;

    for _ in 0..400 {
        let mid = 0.5 * (a + b);
        let mut x = if fa.is_finite() && fb.is_finite() { a - fa * (b - a) / (fb - fa) } else { mid };
        // step at least the tolerance away from either end so that a
        // root sitting next to one end closes the bracket on the next step
        let min_step = rel_tol * a.abs().max(b.abs());
        if x.is_nan() || b - a <= 2.0 * min_step {
            x = mid;
        } else {
            x = x.clamp(a + min_step, b - min_step);
        }
        if b - a > 0.5 * width {
            stalled += 1;
        } else {
            stalled = 0;
            width = b - a;
        }
        if stalled >= 3 {
            // slow progress: one bisection step
            x = mid;
            stalled = 0;
            width = b - a;
        }

        let fx = f(x)?;
        if fx.is_nan() {
            return Err(Error::NonConvergence(format!("function undefined at {x}")));
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            a = x;
            fa = fx;
            if last_side == -1 && fb.is_finite() {
                fb *= 0.5;
            }
            last_side = -1;
        } else {
            b = x;
            fb = fx;
            if last_side == 1 && fa.is_finite() {
                fa *= 0.5;
            }
            last_side = 1;
        }
        let scale = a.abs().max(b.abs());
        if b - a <= rel_tol * scale {
            let best = match (fa.is_finite(), fb.is_finite()) {
                (true, true) if -fa < fb => a,
                (true, true) => b,
                _ => 0.5 * (a + b),
            };
            return Ok(best);
        }
    }
    Err(Error::NonConvergence(format!("bracket ({a}, {b}) did not close")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_root_of_tangent_shape() {
        // tan has poles at ±π/2 and a single root at 0.3 after the shift
        let f = |x: f64| Ok((x - 0.3).tan());
        let r =
            solve_increasing(f, 0.3 - std::f64::consts::FRAC_PI_2, 0.3 + std::f64::consts::FRAC_PI_2, 1e-15).unwrap();
        assert!((r - 0.3).abs() < 1e-14);
    }

    #[test]
    fn handles_flat_regions() {
        let f = |x: f64| Ok((x - 2.0).powi(7));
        let r = solve_increasing(f, 1.0, 5.0, 1e-15).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn counts_evaluations() {
        let mut calls = 0;
        let f = |x: f64| {
            calls += 1;
            Ok(x.ln() - 1.0)
        };
        let r = solve_increasing(f, 1e-3, 10.0, 1e-15).unwrap();
        assert!((r - std::f64::consts::E).abs() < 1e-14);
        assert!(calls < 80, "{calls}");
    }

    #[test]
    fn rejects_empty_bracket() {
        assert!(solve_increasing(Ok, 1.0, 1.0, 1e-12).is_err());
    }
}
