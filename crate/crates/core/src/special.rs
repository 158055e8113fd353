//! Special functions needed by the zeta and bounds modules: complex log-Gamma
//! and the exponential integral E₁.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Even-index Bernoulli numbers B₂, B₄, …, B₁₆.
pub const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Principal-branch log Γ(z) for `Re z > 0`, continuous in `Im z`.
///
/// Shifts the argument until `Re z >= 15` and applies the Stirling series.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0);
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += pow * (b / (n * (n - 1.0)));
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

/// Exponential integral E₁(x) for x > 0.
///
/// Power series for `x <= 1`, continued fraction (modified Lentz) above.
pub fn exp_integral_e1(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x <= 1.0 {
        // E1(x) = -γ - ln x - Σ (-x)^k / (k·k!)
        let mut term = 1.0;
        let mut acc = 0.0;
        for k in 1..60 {
            let kf = k as f64;
            term *= -x / kf;
            let add = term / kf;
            acc += add;
            if add.abs() < 1e-17 * acc.abs().max(1e-300) {
                break;
            }
        }
        -EULER_GAMMA - x.ln() - acc
    } else {
        // E1(x) = e^{-x} / (x + 1 - 1²/(x + 3 - 2²/(x + 5 - ...)))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}
