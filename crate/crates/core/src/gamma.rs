//! Gamma function for the Bessel series prefactor.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos approximation, valid for x > 0.5 directly and below via reflection.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x == x.floor() && x <= 171.0 {
        // exact factorial for integer arguments
        let mut acc = 1.0;
        let mut i = 2.0;
        while i < x {
            acc *= i;
            i += 1.0;
        }
        return acc;
    }
    let z = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a
}

/// Γ(ν + 1) for ν ≥ 0, built as Γ(1 + frac)·∏(frac + i) so integer and
/// half-integer orders stay exact to rounding.
pub fn gamma_shifted(nu: f64) -> f64 {
    let whole = nu.floor();
    let frac = nu - whole;
    let mut acc = if frac == 0.0 {
        1.0
    } else if frac == 0.5 {
        0.5 * PI.sqrt()
    } else {
        gamma(1.0 + frac)
    };
    let mut i = 1.0;
    while i <= whole {
        acc *= frac + i;
        i += 1.0;
    }
    acc
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}
