//! Locating ordinates of critical-line zeros and keeping them in an audited
//! table.
//!
//! Isolation works Gram block by Gram block. A Gram point g_n is *good* when
//! (−1)^n Z(g_n) > 0; a block runs between consecutive good Gram points and,
//! when it spans k Gram intervals, is expected to hold k sign changes of Z.
//! The sampling grid inside a block is halved until the expectation is met or
//! the refinement floor is reached. Whatever is missed surfaces in
//! [`audit_completeness`].

mod gram;
pub mod persist;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::bounds::envelope;
use crate::zeta::{hardy_z, z_value};
use crate::{Error, Result};

pub use gram::{gram_index_below, gram_point};

/// Largest height the zero finder accepts.
pub const MAX_HEIGHT: f64 = 1e6;

/// Smallest grid step used while hunting for missing sign changes.
pub const REFINEMENT_FLOOR: f64 = 1e-4;

const REFINE_MAX_ITER: usize = 200;
const REFINE_WIDTH: f64 = 1e-10;

/// One ordinate γ of a zero ρ = β + iγ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroOrdinate {
    /// 1-based rank; 0 until the ordinate is placed in a table.
    pub index: usize,
    pub gamma: f64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableSource {
    Computed,
    Ingested,
    Merged,
}

/// Sorted ordinates with the height up to which the list is complete.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<ZeroOrdinate>,
    t_max: f64,
    audited: bool,
    source: TableSource,
}

impl ZeroTable {
    /// Builds an unaudited table; indices are assigned from 1.
    ///
    /// Fails unless the ordinates are strictly increasing, positive and no
    /// larger than `t_max`.
    pub fn new(ordinates: Vec<(f64, f64)>, t_max: f64, source: TableSource) -> Result<Self> {
        if !t_max.is_finite() {
            return Err(Error::Invalid(format!("t_max must be finite, got {t_max}")));
        }
        let mut out = Vec::with_capacity(ordinates.len());
        let mut prev = 0.0;
        for (i, (gamma, abs_err)) in ordinates.into_iter().enumerate() {
            if !(gamma > prev) {
                return Err(Error::Invalid(format!(
                    "ordinate #{} = {gamma} does not exceed previous {prev}",
                    i + 1
                )));
            }
            if gamma > t_max {
                return Err(Error::Invalid(format!(
                    "ordinate {gamma} exceeds t_max {t_max}"
                )));
            }
            if !(abs_err >= 0.0) {
                return Err(Error::Invalid(format!("negative error bound {abs_err}")));
            }
            out.push(ZeroOrdinate {
                index: i + 1,
                gamma,
                abs_err,
            });
            prev = gamma;
        }
        Ok(Self {
            ordinates: out,
            t_max,
            audited: false,
            source,
        })
    }

    pub fn ordinates(&self) -> &[ZeroOrdinate] {
        &self.ordinates
    }

    pub fn gammas(&self) -> impl DoubleEndedIterator<Item = f64> + ExactSizeIterator + '_ {
        self.ordinates.iter().map(|o| o.gamma)
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn is_audited(&self) -> bool {
        self.audited
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    pub fn max_abs_err(&self) -> f64 {
        self.ordinates.iter().map(|o| o.abs_err).fold(0.0, f64::max)
    }

    /// Runs [`audit_completeness`] and records the verdict on the table.
    pub fn audit(&mut self) -> AuditReport {
        let report = audit_completeness(self);
        self.audited = report.passed();
        report
    }

    /// Like [`ZeroTable::audit`], but turns a failed audit into an error.
    pub fn into_audited(mut self) -> Result<Self> {
        let report = self.audit();
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::AuditFailed(Box::new(report)))
        }
    }

    /// Number of ordinates γ ≤ t, without coverage or audit checks.
    pub fn count_le(&self, t: f64) -> usize {
        self.ordinates.partition_point(|o| o.gamma <= t)
    }

    /// N(T): number of ordinates with 0 < γ ≤ T.
    pub fn count_up_to(&self, t: f64) -> Result<usize> {
        self.check_query(t)?;
        Ok(self.count_le(t))
    }

    pub(crate) fn check_query(&self, t: f64) -> Result<()> {
        if !self.audited {
            return Err(Error::Unaudited);
        }
        if !(t <= self.t_max) {
            return Err(Error::OutOfRange {
                t,
                t_max: self.t_max,
            });
        }
        Ok(())
    }
}

/// Interval with a sign change of Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolationOptions {
    /// Grid step before any local halving; `None` picks
    /// `min(0.5, π / log(t_hi / 2π))`.
    pub initial_step: Option<f64>,
    pub refinement_floor: f64,
}

impl Default for IsolationOptions {
    fn default() -> Self {
        Self {
            initial_step: None,
            refinement_floor: REFINEMENT_FLOOR,
        }
    }
}

impl IsolationOptions {
    pub fn step_for(&self, t_hi: f64) -> f64 {
        self.initial_step.unwrap_or_else(|| default_step(t_hi))
    }

    pub fn halved(&self, t_hi: f64) -> Self {
        Self {
            initial_step: Some(0.5 * self.step_for(t_hi)),
            ..*self
        }
    }
}

fn default_step(t_hi: f64) -> f64 {
    let l = (t_hi / (2.0 * PI)).ln();
    if l <= 2.0 * PI {
        0.5
    } else {
        (PI / l).min(0.5)
    }
}

/// A stretch of the t-axis with the number of sign changes it should hold.
#[derive(Debug, Clone, Copy)]
struct Window {
    lo: f64,
    hi: f64,
    expected: Option<usize>,
}

fn is_good_gram(n: i64, z: f64) -> bool {
    let parity = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    parity * z > 0.0
}

/// Splits [t_lo, t_hi] (widened to whole Gram blocks) into windows with an
/// expected sign-change count.
fn gram_windows(t_lo: f64, t_hi: f64) -> Vec<Window> {
    let mut windows = Vec::new();
    let g_first = gram_point(-1);
    let first_good = is_good_gram(-1, z_value(g_first));
    if t_lo < g_first {
        windows.push(Window {
            lo: t_lo,
            hi: g_first,
            expected: first_good.then_some(0),
        });
    }
    if t_hi < g_first {
        return windows;
    }

    let mut start = if t_lo < g_first {
        -1
    } else {
        gram_index_below(t_lo)
    };
    while start > -1 && !is_good_gram(start, z_value(gram_point(start))) {
        start -= 1;
    }
    // Gram points from `start` up to just past t_hi, evaluated in parallel.
    let est_end = gram_index_below(t_hi.max(g_first)) + 2;
    let initial = (est_end - start + 1) as usize;
    let mut pts: Vec<(i64, f64, f64)> = (start..=est_end)
        .into_par_iter()
        .map(|n| {
            let g = gram_point(n);
            (n, g, z_value(g))
        })
        .collect();
    // extend until the last point is good and beyond t_hi
    loop {
        let &(n, g, z) = pts.last().expect("non-empty");
        if g >= t_hi && is_good_gram(n, z) {
            break;
        }
        let next = n + 1;
        let g = gram_point(next);
        pts.push((next, g, z_value(g)));
        if pts.len() > initial + 200 {
            break;
        }
    }

    let mut prev_good: Option<(i64, f64)> = None;
    for &(n, g, z) in &pts {
        if is_good_gram(n, z) {
            if let Some((m, gm)) = prev_good {
                windows.push(Window {
                    lo: gm,
                    hi: g,
                    expected: Some((n - m) as usize),
                });
            } else if g > t_lo && windows.is_empty() {
                // no good Gram point below t_lo: the count is unknown
                windows.push(Window {
                    lo: t_lo,
                    hi: g,
                    expected: None,
                });
            }
            prev_good = Some((n, g));
        }
    }
    if let (Some((_, gm)), Some(&(_, g_last, _))) = (prev_good, pts.last()) {
        if g_last > gm {
            windows.push(Window {
                lo: gm,
                hi: g_last,
                expected: None,
            });
        }
    }
    windows
}

/// Sign-change brackets of Z inside one window; returns the brackets and
/// whether the expected count was reached.
fn scan_window(w: &Window, step: f64, floor: f64, cuts: &[f64]) -> (Vec<Bracket>, bool) {
    let mut h = step;
    loop {
        let k = ((w.hi - w.lo) / h).ceil().max(1.0) as usize;
        let mut grid: Vec<f64> = (0..=k)
            .map(|i| w.lo + (w.hi - w.lo) * i as f64 / k as f64)
            .collect();
        grid[k] = w.hi;
        for &c in cuts {
            if c > w.lo && c < w.hi {
                grid.push(c);
            }
        }
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let vals: Vec<f64> = grid.iter().map(|&t| z_value(t)).collect();
        let brackets: Vec<Bracket> = grid
            .windows(2)
            .zip(vals.windows(2))
            .filter(|(_, v)| (v[0] > 0.0) != (v[1] > 0.0))
            .map(|(g, _)| Bracket { lo: g[0], hi: g[1] })
            .collect();
        match w.expected {
            Some(e) if brackets.len() < e && h * 0.5 >= floor => h *= 0.5,
            Some(e) => return (brackets.clone(), brackets.len() >= e),
            None => return (brackets, true),
        }
    }
}

/// Disjoint sign-change brackets of Z in [t_lo, t_hi] with default options.
pub fn isolate_zeros(t_lo: f64, t_hi: f64) -> Result<Vec<Bracket>> {
    isolate_zeros_with(t_lo, t_hi, &IsolationOptions::default())
}

pub fn isolate_zeros_with(t_lo: f64, t_hi: f64, opts: &IsolationOptions) -> Result<Vec<Bracket>> {
    if !(t_lo >= 2.0) {
        return Err(Error::domain("isolate_zeros", t_lo, "t_lo >= 2"));
    }
    if !(t_hi > t_lo && t_hi <= MAX_HEIGHT) {
        return Err(Error::domain("isolate_zeros", t_hi, "t_lo < t_hi <= 1e6"));
    }
    let step = opts.step_for(t_hi);
    let cuts = [t_lo, t_hi];
    let windows = gram_windows(t_lo, t_hi);
    let found: Vec<Vec<Bracket>> = windows
        .par_iter()
        .map(|w| scan_window(w, step, opts.refinement_floor, &cuts).0)
        .collect();
    let mut out: Vec<Bracket> = found
        .into_iter()
        .flatten()
        .filter(|b| b.lo >= t_lo && b.hi <= t_hi)
        .collect();
    out.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    Ok(out)
}

/// Refines a sign-change bracket to an ordinate: bisection down to width
/// 1e-4, then Illinois-modified secant steps kept inside the bracket.
///
/// The returned `index` is 0; tables assign ranks.
pub fn refine_zero(bracket: Bracket) -> Result<ZeroOrdinate> {
    let Bracket {
        lo: mut a,
        hi: mut b,
    } = bracket;
    let no_change = Error::NoSignChange { a, b };
    if !(a < b) {
        return Err(no_change);
    }
    let mut fa = hardy_z(a)?.z_value;
    let mut fb = hardy_z(b)?.z_value;
    if fa == 0.0 {
        return finish(a, 0.0, a, b);
    }
    if fb == 0.0 {
        return finish(b, 0.0, a, b);
    }
    if (fa > 0.0) == (fb > 0.0) {
        return Err(no_change);
    }
    // which side the last secant point replaced: -1 = a, 1 = b
    let mut side = 0;
    for _ in 0..REFINE_MAX_ITER {
        let width = b - a;
        if width <= REFINE_WIDTH {
            let c = 0.5 * (a + b);
            return finish(c, 0.5 * width, a, b);
        }
        let mut c = if width > 1e-4 {
            0.5 * (a + b)
        } else {
            (a * fb - b * fa) / (fb - fa)
        };
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let p = hardy_z(c)?;
        let fc = p.z_value;
        if fc == 0.0 || p.certain_sign().is_none() && width <= 1e-6 {
            // Z is below its error estimate: the root is pinned to c
            return finish(c, 0.0, a, b);
        }
        if (fc > 0.0) == (fa > 0.0) {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
    }
    Err(Error::NoConvergence {
        a: bracket.lo,
        b: bracket.hi,
        iterations: REFINE_MAX_ITER,
    })
}

fn finish(gamma: f64, half_width: f64, a: f64, b: f64) -> Result<ZeroOrdinate> {
    // slope from a symmetric difference around the root; the Illinois halving
    // makes the bracket values unreliable for this purpose
    let h = 1e-5f64.min(0.5 * (b - a).max(1e-7));
    let lo = hardy_z(gamma - h)?;
    let hi = hardy_z(gamma + h)?;
    let slope = ((hi.z_value - lo.z_value) / (2.0 * h)).abs();
    let z_err = lo.abs_err_est.max(hi.abs_err_est);
    let abs_err = half_width.max(1e-12 * gamma) + z_err / slope.max(1e-300);
    Ok(ZeroOrdinate {
        index: 0,
        gamma,
        abs_err,
    })
}

/// Isolates, refines and audits every ordinate up to `t_max`.
pub fn build_table(t_max: f64) -> Result<ZeroTable> {
    build_table_with(t_max, &IsolationOptions::default())
}

pub fn build_table_with(t_max: f64, opts: &IsolationOptions) -> Result<ZeroTable> {
    if !(20.0..=MAX_HEIGHT).contains(&t_max) {
        return Err(Error::domain("build_table", t_max, "20 <= t_max <= 1e6"));
    }
    let brackets = isolate_zeros_with(2.0, t_max, opts)?;
    let mut zeros = refine_all(&brackets)?;
    let mut opts = *opts;
    for _round in 0..4 {
        let mut table = ZeroTable::new(
            zeros.iter().map(|z| (z.gamma, z.abs_err)).collect(),
            t_max,
            TableSource::Computed,
        )?;
        let report = table.audit();
        if report.passed() {
            return Ok(table);
        }
        if !report.envelope_ok() || report.gram_failures.is_empty() {
            return Err(Error::AuditFailed(Box::new(report)));
        }
        // re-isolate the offending windows at half the grid step
        opts = opts.halved(t_max);
        for f in &report.gram_failures {
            let (lo, hi) = (f.window.0.max(2.0), f.window.1.min(t_max));
            let fresh = isolate_zeros_with(lo, hi, &opts)?;
            let fresh = refine_all(&fresh)?;
            zeros.retain(|z| z.gamma < lo || z.gamma > hi);
            zeros.extend(fresh);
        }
        zeros.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
        zeros.dedup_by(|a, b| (a.gamma - b.gamma).abs() <= a.abs_err + b.abs_err);
    }
    let mut table = ZeroTable::new(
        zeros.iter().map(|z| (z.gamma, z.abs_err)).collect(),
        t_max,
        TableSource::Computed,
    )?;
    let report = table.audit();
    if report.passed() {
        Ok(table)
    } else {
        Err(Error::AuditFailed(Box::new(report)))
    }
}

fn refine_all(brackets: &[Bracket]) -> Result<Vec<ZeroOrdinate>> {
    brackets.par_iter().map(|&b| refine_zero(b)).collect()
}

/// Counting-envelope check at one height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCheck {
    pub t: f64,
    pub count: usize,
    pub f: f64,
    pub r: f64,
    pub ok: bool,
}

/// A good Gram point g_n where the table does not hold n + 1 ordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramFailure {
    pub n: i64,
    pub gram_point: f64,
    pub expected: usize,
    pub counted: usize,
    /// From the previous good Gram point (or 2) up to this one.
    pub window: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub t_max: f64,
    pub count: usize,
    pub ordering_ok: bool,
    pub envelope: Vec<EnvelopeCheck>,
    pub gram_checks: usize,
    pub gram_failures: Vec<GramFailure>,
    pub assumptions: Vec<String>,
}

impl AuditReport {
    pub fn envelope_ok(&self) -> bool {
        self.envelope.iter().all(|c| c.ok)
    }

    pub fn passed(&self) -> bool {
        self.ordering_ok && self.envelope_ok() && self.gram_failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let bad_env = self.envelope.iter().filter(|c| !c.ok).count();
        let mut s = format!(
            "{} ordinates to t_max={}: {} envelope violations, {}/{} Gram checks failed",
            self.count,
            self.t_max,
            bad_env,
            self.gram_failures.len(),
            self.gram_checks
        );
        if let Some(f) = self.gram_failures.first() {
            s.push_str(&format!(
                "; first offending window [{:.6}, {:.6}] counted {} expected {}",
                f.window.0, f.window.1, f.counted, f.expected
            ));
        }
        if let Some(c) = self.envelope.iter().find(|c| !c.ok) {
            s.push_str(&format!(
                "; |N - F| > R at T={}: N={} F={:.6} R={:.6}",
                c.t, c.count, c.f, c.r
            ));
        }
        if !self.ordering_ok {
            s.push_str("; ordinates not strictly increasing");
        }
        s
    }
}

/// Completeness audit of a table:
///
/// 1. the Rosser envelope |N(T) − F(T)| ≤ R(T) at t_max and at 100 heights
///    spread over [2, t_max] (a violation is fatal);
/// 2. at every good Gram point g_n ≤ t_max, where θ(g_n)/π + 1 = n + 1 is an
///    integer, the table must hold exactly n + 1 ordinates.
pub fn audit_completeness(table: &ZeroTable) -> AuditReport {
    let t_max = table.t_max;
    let ordering_ok = table
        .ordinates
        .windows(2)
        .all(|w| w[0].gamma < w[1].gamma && w[1].index == w[0].index + 1)
        && table.ordinates.first().is_none_or(|o| o.index == 1);

    let mut heights: Vec<f64> = Vec::with_capacity(101);
    if t_max >= 2.0 {
        heights.extend((0..100).map(|i| 2.0 + (t_max - 2.0) * i as f64 / 100.0));
        heights.push(t_max);
    }
    let envelope = heights
        .iter()
        .map(|&t| {
            let e = envelope(t).expect("t >= 2");
            let count = table.count_le(t);
            EnvelopeCheck {
                t,
                count,
                f: e.f_val,
                r: e.r_val,
                ok: (count as f64 - e.f_val).abs() <= e.r_val,
            }
        })
        .collect();

    let mut gram_checks = 0;
    let mut gram_failures = Vec::new();
    let g_first = gram_point(-1);
    if t_max >= g_first {
        let n_top = gram_index_below(t_max);
        let pts: Vec<(i64, f64, bool)> = (-1..=n_top)
            .into_par_iter()
            .map(|n| {
                let g = gram_point(n);
                (n, g, is_good_gram(n, z_value(g)))
            })
            .collect();
        let mut prev = 2.0;
        for (n, g, good) in pts {
            if !good || g > t_max {
                continue;
            }
            gram_checks += 1;
            let expected = (n + 1) as usize;
            let counted = table.count_le(g);
            if counted != expected {
                gram_failures.push(GramFailure {
                    n,
                    gram_point: g,
                    expected,
                    counted,
                    window: (prev, g),
                });
            }
            prev = g;
        }
    }

    AuditReport {
        t_max,
        count: table.len(),
        ordering_ok,
        envelope,
        gram_checks,
        gram_failures,
        assumptions: vec![
            format!("grids refined down to {REFINEMENT_FLOOR} before a Gram block is accepted"),
            "zeros are simple and a Gram block between good Gram points g_m < g_n holds n - m zeros"
                .to_string(),
            "ordinates above the last good Gram point below t_max are covered by the envelope check only"
                .to_string(),
        ],
    }
}

#[cfg(test)]
mod tests;
