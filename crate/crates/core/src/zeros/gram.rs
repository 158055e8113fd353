//! Gram points: solutions of θ(g_n) = nπ.

use std::f64::consts::{E, PI};

use crate::zeta::rs_theta;

/// Principal branch of the Lambert W function for x ≥ −1/e.
fn lambert_w0(x: f64) -> f64 {
    let mut w = if x < 1.0 {
        (1.0 + x).max(1e-12).ln() * 0.8
    } else {
        x.ln() - x.ln().ln().max(0.0)
    };
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    w
}

/// The n-th Gram point, n ≥ −1.
///
/// θ(t) ≈ (t/2)·log(t/(2πe)) − π/8 gives a starting value through Lambert W;
/// Newton's method on θ finishes.
pub fn gram_point(n: i64) -> f64 {
    assert!(n >= -1, "Gram points are indexed from -1");
    let x = (n as f64 + 0.125) / E;
    let mut t = 2.0 * PI * E * lambert_w0(x).exp();
    let target = n as f64 * PI;
    for _ in 0..60 {
        let th = rs_theta(t).expect("t >= 1");
        let deriv = 0.5 * (t / (2.0 * PI)).ln();
        let step = (th - target) / deriv;
        t -= step;
        if step.abs() <= 1e-13 * t {
            break;
        }
    }
    t
}

/// Index of the largest Gram point not exceeding `t` (t ≥ g₋₁ ≈ 9.667).
pub fn gram_index_below(t: f64) -> i64 {
    let th = rs_theta(t).expect("t >= 1");
    let mut n = (th / PI).floor() as i64;
    // guard against rounding right at a Gram point
    while n > -1 && gram_point(n) > t {
        n -= 1;
    }
    while gram_point(n + 1) <= t {
        n += 1;
    }
    n.max(-1)
}
