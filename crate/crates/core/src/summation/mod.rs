//! A(T) = Σ_{0<γ≤T} 1/γ, weighted sums over ordinates, the partial-summation
//! identity, and sweeps of the two-sided estimate
//! 3/50 < A(T) − M(T) < 109/250.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{main_term, C_AL_FLOOR, C_AU_CAP, LOWER_THRESHOLD, UPPER_THRESHOLD};
use crate::sum::CompensatedSum;
use crate::zeros::ZeroTable;
use crate::{Error, Result};

/// Offset used around each ordinate in sweeps.
pub const JUMP_EPSILON: f64 = 1e-6;

/// Prefix sums of 1/γ in ascending order, with the propagated effect of each
/// ordinate's error bound.
#[derive(Debug, Clone)]
pub struct ReciprocalSums<'a> {
    table: &'a ZeroTable,
    prefix: Vec<f64>,
    sensitivity: Vec<f64>,
}

impl<'a> ReciprocalSums<'a> {
    pub fn new(table: &'a ZeroTable) -> Self {
        let mut acc = CompensatedSum::new();
        let mut sens = CompensatedSum::new();
        let mut prefix = Vec::with_capacity(table.len() + 1);
        let mut sensitivity = Vec::with_capacity(table.len() + 1);
        prefix.push(0.0);
        sensitivity.push(0.0);
        for o in table.ordinates() {
            acc += 1.0 / o.gamma;
            sens += o.abs_err / (o.gamma * o.gamma);
            prefix.push(acc.value());
            sensitivity.push(sens.value());
        }
        Self {
            table,
            prefix,
            sensitivity,
        }
    }

    pub fn table(&self) -> &ZeroTable {
        self.table
    }

    /// A(T) and an absolute error estimate, without coverage checks.
    pub fn a_with_err(&self, t: f64) -> (f64, f64) {
        let k = self.table.count_le(t);
        let a = self.prefix[k];
        (a, self.sensitivity[k] + 4.0 * f64::EPSILON * a)
    }
}

/// A(T), summed in ascending order with compensation.
pub fn a_of_t(table: &ZeroTable, t: f64) -> Result<f64> {
    table.check_query(t)?;
    let k = table.count_le(t);
    Ok(table.ordinates()[..k]
        .iter()
        .map(|o| 1.0 / o.gamma)
        .collect::<CompensatedSum>()
        .value())
}

/// Both sides of Σ_{U<γ≤V} φ(γ) = −∫_U^V N(t)φ′(t)dt + N(V)φ(V) − N(U)φ(U).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialSumReport {
    pub u: f64,
    pub v: f64,
    pub direct: f64,
    pub stieltjes: f64,
    pub difference: f64,
    /// Rounding estimate for the Stieltjes side; the integral itself is exact.
    pub abs_err_est: f64,
}

/// Direct sum of φ over U < γ ≤ V together with the partial-summation form.
///
/// N is constant between consecutive ordinates, so the integral is the exact
/// sum Σ N_k·(φ(b_{k+1}) − φ(b_k)) over those pieces; no quadrature error.
pub fn partial_sum<F>(table: &ZeroTable, phi: F, u: f64, v: f64) -> Result<PartialSumReport>
where
    F: Fn(f64) -> f64,
{
    table.check_query(v)?;
    if !(u > 1.0 && u <= v) {
        return Err(Error::Invalid(format!("need 1 < U <= V, got U={u} V={v}")));
    }
    let n_u = table.count_le(u);
    let n_v = table.count_le(v);
    let inside: Vec<f64> = table.ordinates()[n_u..n_v]
        .iter()
        .map(|o| o.gamma)
        .collect();

    let mut breaks = Vec::with_capacity(inside.len() + 2);
    breaks.push(u);
    breaks.extend_from_slice(&inside);
    breaks.push(v);
    let vals: Vec<f64> = breaks.iter().map(|&t| phi(t)).collect();
    if let Some(bad) = vals.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::Invalid(format!(
            "weight must be finite and nonnegative, got {bad}"
        )));
    }

    let direct = vals[1..vals.len() - 1]
        .iter()
        .copied()
        .collect::<CompensatedSum>()
        .value();

    let mut integral = CompensatedSum::new();
    let mut variation = 0.0;
    for (k, w) in vals.windows(2).enumerate() {
        let n = (n_u + k) as f64;
        let d = w[1] - w[0];
        integral += n * d;
        variation += n * d.abs();
    }
    let f_v = *vals.last().expect("non-empty");
    let boundary = n_v as f64 * f_v - n_u as f64 * vals[0];
    let stieltjes = boundary - integral.value();
    let scale = variation + n_v as f64 * f_v + n_u as f64 * vals[0] + direct;

    Ok(PartialSumReport {
        u,
        v,
        direct,
        stieltjes,
        difference: direct - stieltjes,
        abs_err_est: 8.0 * f64::EPSILON * scale,
    })
}

/// One evaluation of A(T) − M(T) against 3/50 and 109/250.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub t: f64,
    pub a_val: f64,
    pub m_val: f64,
    pub delta: f64,
    /// delta − 3/50 exceeds the error estimate.
    pub lower_ok: bool,
    /// 109/250 − delta exceeds the error estimate.
    pub upper_ok: bool,
    pub margin_lo: f64,
    pub margin_hi: f64,
    pub abs_err_est: f64,
}

impl TheoremCheck {
    pub fn lower_applies(&self) -> bool {
        self.t >= LOWER_THRESHOLD
    }

    pub fn upper_applies(&self) -> bool {
        self.t >= UPPER_THRESHOLD
    }

    /// Both sides hold wherever they are claimed.
    pub fn passes(&self) -> bool {
        (!self.lower_applies() || self.lower_ok) && (!self.upper_applies() || self.upper_ok)
    }
}

pub fn theorem_check(sums: &ReciprocalSums<'_>, t: f64) -> Result<TheoremCheck> {
    let (a_val, a_err) = sums.a_with_err(t);
    let m_val = main_term(t)?;
    let delta = a_val - m_val;
    let l = t.ln();
    let abs_err_est = a_err + 8.0 * f64::EPSILON * (l * l + m_val.abs() + a_val.abs());
    let margin_lo = delta - C_AL_FLOOR.to_f64();
    let margin_hi = C_AU_CAP.to_f64() - delta;
    Ok(TheoremCheck {
        t,
        a_val,
        m_val,
        delta,
        lower_ok: margin_lo > abs_err_est,
        upper_ok: margin_hi > abs_err_est,
        margin_lo,
        margin_hi,
        abs_err_est,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub records: Vec<TheoremCheck>,
    pub min_delta: f64,
    pub max_delta: f64,
    /// Smallest delta − 3/50 over records with T ≥ 2.
    pub min_margin_lo: f64,
    /// Smallest 109/250 − delta over records with T ≥ 2.222.
    pub min_margin_hi: f64,
    pub failures: usize,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failures == 0
    }
}

/// Heights visited by a sweep: `samples` evenly spaced points plus every
/// ordinate in range and the ordinate ± [`JUMP_EPSILON`], ascending.
pub fn sweep_heights(table: &ZeroTable, t_min: f64, t_max: f64, samples: usize) -> Vec<f64> {
    let mut hs: Vec<f64> = if samples == 1 {
        vec![t_min]
    } else {
        (0..samples)
            .map(|i| t_min + (t_max - t_min) * i as f64 / (samples - 1) as f64)
            .collect()
    };
    for g in table.gammas() {
        for h in [g - JUMP_EPSILON, g, g + JUMP_EPSILON] {
            if h >= t_min && h <= t_max {
                hs.push(h);
            }
        }
    }
    hs.sort_by(f64::total_cmp);
    hs
}

pub fn theorem_sweep(
    table: &ZeroTable,
    t_min: f64,
    t_max: f64,
    samples: usize,
) -> Result<SweepReport> {
    table.check_query(t_max)?;
    if !(t_min >= LOWER_THRESHOLD && t_min <= t_max) {
        return Err(Error::Invalid(format!(
            "need 2 <= t_min <= t_max, got {t_min}, {t_max}"
        )));
    }
    if samples == 0 {
        return Err(Error::Invalid("samples must be at least 1".into()));
    }
    let sums = ReciprocalSums::new(table);
    let heights = sweep_heights(table, t_min, t_max, samples);
    let records = heights
        .par_iter()
        .map(|&t| theorem_check(&sums, t))
        .collect::<Result<Vec<_>>>()?;

    let mut report = SweepReport {
        min_delta: f64::INFINITY,
        max_delta: f64::NEG_INFINITY,
        min_margin_lo: f64::INFINITY,
        min_margin_hi: f64::INFINITY,
        failures: 0,
        records: Vec::new(),
    };
    for r in &records {
        report.min_delta = report.min_delta.min(r.delta);
        report.max_delta = report.max_delta.max(r.delta);
        if r.lower_applies() {
            report.min_margin_lo = report.min_margin_lo.min(r.margin_lo);
        }
        if r.upper_applies() {
            report.min_margin_hi = report.min_margin_hi.min(r.margin_hi);
        }
        if !r.passes() {
            report.failures += 1;
        }
    }
    report.records = records;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub t: f64,
    pub residual: f64,
    /// Whether the residual sits inside (3/50, 109/250); `None` where neither
    /// side is claimed (T < 2).
    pub in_band: Option<bool>,
}

/// A(T) − M(T) at each height, in the given order.
pub fn asymptotic_residual(table: &ZeroTable, heights: &[f64]) -> Result<Vec<Residual>> {
    let sums = ReciprocalSums::new(table);
    heights
        .iter()
        .map(|&t| {
            table.check_query(t)?;
            let c = theorem_check(&sums, t)?;
            let in_band = c.lower_applies().then(|| c.passes());
            Ok(Residual {
                t,
                residual: c.delta,
                in_band,
            })
        })
        .collect()
}
