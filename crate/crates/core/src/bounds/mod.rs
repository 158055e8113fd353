//! Closed-form objects of the explicit estimate for A(T):
//!
//! * the counting envelope F(T) ± R(T),
//! * the main term M(T),
//! * antiderivatives P of F(t)/t² and Q of R(t)/t²,
//! * 𝔈(t) = ∫₁^∞ ds/(s·tˢ) = E₁(log t) and its two-sided bracket,
//! * the tail terms and the constants c_au, c_al.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use crate::quad::{self, QuadResult};
use crate::special::exp_integral_e1;
use crate::zeros::{refine_zero, Bracket};
use crate::{Error, Result};

/// Lowest height of the lower estimate.
pub const LOWER_THRESHOLD: f64 = 2.0;
/// Lowest height of the upper estimate, 2222/1000.
pub const UPPER_THRESHOLD: f64 = 2.222;

/// Height at which the constants are read off as limits.
pub const LIMIT_HEIGHT: f64 = 1e10;
/// Second height for the convergence check of the limits.
pub const LIMIT_CHECK_HEIGHT: f64 = 1e9;
pub const LIMIT_TOLERANCE: f64 = 1e-7;

const R_LOG: f64 = 137.0 / 1000.0;
const R_LOGLOG: f64 = 433.0 / 1000.0;
const R_CONST: f64 = 397.0 / 250.0;

/// A fraction compared exactly against binary64 values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRatio {
    pub num: i64,
    pub den: i64,
}

impl ExactRatio {
    pub const fn new(num: i64, den: i64) -> Self {
        Self { num, den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact ordering of `x` relative to this fraction.
    pub fn compare(self, x: f64) -> Ordering {
        let exact = BigRational::from_float(x).expect("finite value");
        exact.cmp(&BigRational::new(
            BigInt::from(self.num),
            BigInt::from(self.den),
        ))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Upper cap 109/250 for A(T) − M(T).
pub const C_AU_CAP: ExactRatio = ExactRatio::new(109, 250);
/// Lower floor 3/50 (= 15/250) for A(T) − M(T).
pub const C_AL_FLOOR: ExactRatio = ExactRatio::new(3, 50);

fn require(what: &'static str, t: f64, min: f64, domain: &'static str) -> Result<()> {
    if t >= min && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, t, domain))
    }
}

/// F(T) = (T/2π)·log(T/2π) − T/2π + 7/8.
pub fn big_f(t: f64) -> Result<f64> {
    require("big_f", t, 2.0, "T >= 2")?;
    let x = t / (2.0 * PI);
    Ok(x * x.ln() - x + 7.0 / 8.0)
}

/// R(T) = (137/1000)·log T + (433/1000)·log log T + 397/250.
pub fn big_r(t: f64) -> Result<f64> {
    require("big_r", t, 2.0, "T >= 2")?;
    let l = t.ln();
    Ok(R_LOG * l + R_LOGLOG * l.ln() + R_CONST)
}

/// F, R and the interval [F − R, F + R] at one height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeEval {
    pub t: f64,
    pub f_val: f64,
    pub r_val: f64,
    pub lower: f64,
    pub upper: f64,
}

impl EnvelopeEval {
    pub fn contains(&self, count: usize) -> bool {
        (count as f64 - self.f_val).abs() <= self.r_val
    }
}

pub fn envelope(t: f64) -> Result<EnvelopeEval> {
    let f_val = big_f(t)?;
    let r_val = big_r(t)?;
    Ok(EnvelopeEval {
        t,
        f_val,
        r_val,
        lower: f_val - r_val,
        upper: f_val + r_val,
    })
}

/// M(T) = log²T/(4π) − log(2π)·log T/(2π).
pub fn main_term(t: f64) -> Result<f64> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::domain("main_term", t, "T > 1"));
    }
    let l = t.ln();
    Ok(l * l / (4.0 * PI) - (2.0 * PI).ln() * l / (2.0 * PI))
}

/// P(t), an antiderivative of F(t)/t²:
/// log²t/(4π) − (1 + log 2π)·log t/(2π) + (log²2π − 2·log 2π)/(4π) − 7/(8t).
pub fn antideriv_f(t: f64) -> Result<f64> {
    require("antideriv_f", t, 2.0, "t >= 2")?;
    Ok(antideriv_f_unchecked(t))
}

fn antideriv_f_unchecked(t: f64) -> f64 {
    let l = t.ln();
    let l2p = (2.0 * PI).ln();
    l * l / (4.0 * PI) - (1.0 + l2p) * l / (2.0 * PI) + (l2p * l2p - 2.0 * l2p) / (4.0 * PI)
        - 7.0 / (8.0 * t)
}

/// Q(t), an antiderivative of R(t)/t²:
/// −(433/1000)·log log t/t − (137/1000)·log t/t − 69/(40t) − (433/1000)·𝔈(t).
pub fn antideriv_r(t: f64) -> Result<f64> {
    require("antideriv_r", t, 2.0, "t >= 2")?;
    Ok(antideriv_r_with(t, e_frak(t)?))
}

/// Q(t) with a caller-supplied value standing in for 𝔈(t).
pub fn antideriv_r_with(t: f64, e_value: f64) -> f64 {
    let l = t.ln();
    -R_LOGLOG * l.ln() / t - R_LOG * l / t - 69.0 / (40.0 * t) - R_LOGLOG * e_value
}

/// 𝔈(t) = ∫₁^∞ ds/(s·tˢ) through the identity 𝔈(t) = E₁(log t).
pub fn e_frak(t: f64) -> Result<f64> {
    Ok(e_frak_eval(t)?.0)
}

/// 𝔈(t) with an absolute error estimate.
pub fn e_frak_eval(t: f64) -> Result<(f64, f64)> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::domain("e_frak", t, "t > 1"));
    }
    let v = exp_integral_e1(t.ln());
    Ok((v, 8.0 * f64::EPSILON * v))
}

/// 𝔈(t) by adaptive quadrature of the defining integral, written as
/// t⁻¹·∫₀^∞ e^{−v}/(log t + v) dv after s = 1 + v/log t.
pub fn e_frak_quadrature(t: f64) -> Result<QuadResult> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::domain("e_frak_quadrature", t, "t > 1"));
    }
    let l = t.ln();
    let inner = quad::integrate(|v| (-v).exp() / (l + v), 0.0, 60.0, 1e-16, 4000);
    Ok(QuadResult {
        value: inner.value / t,
        abs_err: inner.abs_err / t,
        ..inner
    })
}

/// 1/(t log t) − 1/(t log²t) < 𝔈(t) < 1/(t log t) − 31/(95 t log²t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichCheck {
    pub t: f64,
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
    pub abs_err: f64,
    pub holds: bool,
}

impl SandwichCheck {
    pub fn margin_lo(&self) -> f64 {
        self.value - self.lo
    }

    pub fn margin_hi(&self) -> f64 {
        self.hi - self.value
    }
}

pub fn e_frak_sandwich_bounds(t: f64) -> (f64, f64) {
    let l = t.ln();
    let a = 1.0 / (t * l);
    let b = 1.0 / (t * l * l);
    (a - b, a - 31.0 / 95.0 * b)
}

pub fn e_frak_sandwich(t: f64) -> Result<SandwichCheck> {
    require("e_frak_sandwich", t, 2.0, "t >= 2")?;
    let (lo, hi) = e_frak_sandwich_bounds(t);
    let (value, err) = e_frak_eval(t)?;
    // rounding in the bracket itself
    let abs_err = err + 4.0 * f64::EPSILON * hi.abs().max(lo.abs());
    Ok(SandwichCheck {
        t,
        lo,
        hi,
        value,
        abs_err,
        holds: value - lo > abs_err && hi - value > abs_err,
    })
}

/// −(137 log²T + 433 log T − 433)/(1000 T log²T); negative from T ≈ 2.2217.
pub fn tail_upper(t: f64) -> Result<f64> {
    require("tail_upper", t, 2.0, "T >= 2")?;
    let l = t.ln();
    Ok(-(137.0 * l * l + 433.0 * l - 433.0) / (1000.0 * t * l * l))
}

/// (274 log³T + 866 (log log T) log²T + 3313 log²T + 433 log T − 433)/(1000 T log²T).
pub fn tail_lower(t: f64) -> Result<f64> {
    require("tail_lower", t, 2.0, "T >= 2")?;
    let l = t.ln();
    let l2 = l * l;
    Ok(
        (274.0 * l2 * l + 866.0 * l.ln() * l2 + 3313.0 * l2 + 433.0 * l - 433.0)
            / (1000.0 * t * l2),
    )
}

/// Lower tail obtained when the lower bound keeps the (F − R)/T boundary term
/// and 𝔈(T) is replaced by its lower bracket: equals −`tail_upper`.
/// [`tail_lower`] exceeds it by exactly 2R(T)/T.
pub fn tail_lower_rederived(t: f64) -> Result<f64> {
    Ok(-tail_upper(t)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    /// M(T) + c_au + tail_upper(T)
    pub sharp: f64,
    /// M(T) + 109/250
    pub cap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    /// M(T) + c_al + tail_lower(T)
    pub sharp: f64,
    /// M(T) + c_al + tail_lower_rederived(T)
    pub sharp_rederived: f64,
    /// M(T) + 3/50
    pub floor: f64,
}

pub fn upper_bound_a(t: f64, constants: &BoundConstants) -> Result<UpperBound> {
    require("upper_bound_a", t, UPPER_THRESHOLD, "T >= 2.222")?;
    let m = main_term(t)?;
    Ok(UpperBound {
        sharp: m + constants.c_au + tail_upper(t)?,
        cap: m + C_AU_CAP.to_f64(),
    })
}

pub fn lower_bound_a(t: f64, constants: &BoundConstants) -> Result<LowerBound> {
    require("lower_bound_a", t, LOWER_THRESHOLD, "T >= 2")?;
    let m = main_term(t)?;
    Ok(LowerBound {
        sharp: m + constants.c_al + tail_lower(t)?,
        sharp_rederived: m + constants.c_al + tail_lower_rederived(t)?,
        floor: m + C_AL_FLOOR.to_f64(),
    })
}

/// How 𝔈(γ₁) enters the boundary term Q(γ₁).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaOneTerm {
    /// 𝔈(γ₁) replaced by its upper bracket 1/(γ₁ log γ₁) − 31/(95 γ₁ log²γ₁).
    Bracketed,
    /// 𝔈(γ₁) evaluated exactly.
    Exact,
}

/// The pre-extraction upper and lower bounds for A(T), each minus M(T).
///
/// upper: [P(T) − P(γ₁)] + [Q(T) − Q(γ₁)] + (F(T) + R(T))/T − M(T)
/// lower: [P(T) − P(γ₁)] − [Q(T) − Q(γ₁)] + (F(T) − R(T))/T − M(T)
pub fn bound_offsets(t: f64, gamma1: f64, term: GammaOneTerm) -> Result<(f64, f64)> {
    let e_g1 = match term {
        GammaOneTerm::Bracketed => e_frak_sandwich_bounds(gamma1).1,
        GammaOneTerm::Exact => e_frak(gamma1)?,
    };
    let p = antideriv_f(t)? - antideriv_f_unchecked(gamma1);
    let q = antideriv_r(t)? - antideriv_r_with(gamma1, e_g1);
    let f = big_f(t)?;
    let r = big_r(t)?;
    let m = main_term(t)?;
    Ok((p + q + (f + r) / t - m, p - q + (f - r) / t - m))
}

/// γ₁, c_au, c_al and the fractions they are compared with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub gamma1: f64,
    pub c_au: f64,
    pub c_al: f64,
    /// Same limits with 𝔈(γ₁) evaluated exactly instead of bracketed.
    pub c_au_exact_gamma1: f64,
    pub c_al_exact_gamma1: f64,
    pub c_au_cap: ExactRatio,
    pub c_al_floor: ExactRatio,
    /// Largest change of either limit between 10⁹ and 10¹⁰.
    pub limit_drift: f64,
    pub converged: bool,
    pub abs_err_est: f64,
}

impl BoundConstants {
    /// c_au < 109/250 exactly and by more than the error estimate.
    pub fn c_au_below_cap(&self) -> bool {
        self.c_au_cap.compare(self.c_au) == Ordering::Less
            && self.c_au_cap.to_f64() - self.c_au > self.abs_err_est
    }

    /// c_al > 3/50 exactly and by more than the error estimate.
    pub fn c_al_above_floor(&self) -> bool {
        self.c_al_floor.compare(self.c_al) == Ordering::Greater
            && self.c_al - self.c_al_floor.to_f64() > self.abs_err_est
    }
}

/// Locates γ₁ with the zero finder, then evaluates the constants.
pub fn compute_constants() -> Result<BoundConstants> {
    let g1 = refine_zero(Bracket { lo: 14.0, hi: 14.3 })?;
    constants_for_gamma1(g1.gamma)
}

/// c_au and c_al as limits T → ∞ of the pre-extraction bounds minus M(T),
/// read off at T = 10¹⁰ and checked against T = 10⁹.
pub fn constants_for_gamma1(gamma1: f64) -> Result<BoundConstants> {
    let (au, al) = bound_offsets(LIMIT_HEIGHT, gamma1, GammaOneTerm::Bracketed)?;
    let (au9, al9) = bound_offsets(LIMIT_CHECK_HEIGHT, gamma1, GammaOneTerm::Bracketed)?;
    let (au_x, al_x) = bound_offsets(LIMIT_HEIGHT, gamma1, GammaOneTerm::Exact)?;
    let limit_drift = (au - au9).abs().max((al - al9).abs());
    Ok(BoundConstants {
        gamma1,
        c_au: au,
        c_al: al,
        c_au_exact_gamma1: au_x,
        c_al_exact_gamma1: al_x,
        c_au_cap: C_AU_CAP,
        c_al_floor: C_AL_FLOOR,
        limit_drift,
        converged: limit_drift <= LIMIT_TOLERANCE,
        // discarded terms at 10^10 are O(log²T/T) ≈ 5e-8 (drift shows the
        // actual change is far smaller); 1e-12 covers rounding
        abs_err_est: limit_drift + 1e-12,
    })
}
