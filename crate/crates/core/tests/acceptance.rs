//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p zgb-core --test acceptance`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use zgb_core::bounds::{
    antideriv_f, antideriv_r, big_f, big_r, compute_constants, e_frak, e_frak_quadrature,
    e_frak_sandwich, envelope, tail_lower, tail_upper, UPPER_THRESHOLD,
};
use zgb_core::ingest::{cross_validate, parse_reference};
use zgb_core::summation::{partial_sum, theorem_sweep};
use zgb_core::zeros::{build_table, isolate_zeros, refine_zero};
use zgb_core::ZeroTable;

/// N(10⁴), from a 30-digit mpmath count.
const COUNT_TO_1E4: usize = 10_142;
const COUNT_TO_1000: usize = 649;

type Weight = (&'static str, fn(f64) -> f64);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn criterion(
    results: &mut Vec<bool>,
    number: u32,
    name: &str,
    budget: Duration,
    body: impl FnOnce() -> Verdict,
) {
    let start = Instant::now();
    let v = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let passed = v.passed && in_time;
    println!(
        "criterion {number} {}: {name}: {} [{:.3}s, budget {}s{}]",
        if passed { "PASS" } else { "FAIL" },
        v.detail,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_time { "" } else { ", over budget" },
    );
    results.push(passed);
}

/// Fourth-order central difference.
fn derivative(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| {
        (a + (b - a) * i as f64 / (n - 1) as f64)
            .exp()
            .clamp(lo, hi)
    })
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut results = Vec::new();

    criterion(&mut results, 1, "constants c_au and c_al", secs(1), || {
        let c = match compute_constants() {
            Ok(c) => c,
            Err(e) => return verdict(false, e.to_string()),
        };
        let ok = (c.c_au - 0.435_964_27).abs() <= 1e-7
            && (c.c_al - 0.060_581_87).abs() <= 1e-7
            && c.c_au_below_cap()
            && c.c_al_above_floor();
        verdict(
            ok,
            format!(
                "c_au = {:.10} (< {}), c_al = {:.10} (> {}), drift {:.1e}",
                c.c_au, c.c_au_cap, c.c_al, c.c_al_floor, c.limit_drift
            ),
        )
    });

    criterion(&mut results, 2, "first ordinate", secs(1), || {
        let brackets = match isolate_zeros(2.0, 20.0) {
            Ok(b) => b,
            Err(e) => return verdict(false, e.to_string()),
        };
        let Some(first) = brackets.first() else {
            return verdict(false, "no sign change below 20".into());
        };
        match refine_zero(*first) {
            Ok(z) => verdict(
                brackets.len() == 1 && (z.gamma - 14.134_725).abs() < 1e-5,
                format!(
                    "gamma_1 = {:.10} +- {:.1e}, {} zero(s) below 20",
                    z.gamma,
                    z.abs_err,
                    brackets.len()
                ),
            ),
            Err(e) => verdict(false, e.to_string()),
        }
    });

    let mut table: Option<ZeroTable> = None;
    criterion(
        &mut results,
        3,
        "two-sided estimate on [2, 1e4]",
        secs(120),
        || {
            let t = match build_table(1e4) {
                Ok(t) => t,
                Err(e) => return verdict(false, format!("table: {e}")),
            };
            let env = envelope(1e4).expect("T >= 2");
            let count_ok = t.len() == COUNT_TO_1E4 && env.contains(t.len()) && t.is_audited();
            let sweep = match theorem_sweep(&t, 2.0, 1e4, 20_000) {
                Ok(s) => s,
                Err(e) => return verdict(false, format!("sweep: {e}")),
            };
            let ok = count_ok
                && sweep.all_pass()
                && sweep.min_margin_lo > 0.0
                && sweep.min_margin_hi > 0.0;
            let detail = format!(
            "{} zeros (envelope [{:.2}, {:.2}]), {} records, {} failures, min margins lo {:.6} hi {:.6}",
            t.len(),
            env.lower,
            env.upper,
            sweep.records.len(),
            sweep.failures,
            sweep.min_margin_lo,
            sweep.min_margin_hi
        );
            table = Some(t);
            verdict(ok, detail)
        },
    );

    criterion(
        &mut results,
        4,
        "counting envelope at 1000 heights",
        secs(5),
        || {
            let Some(t) = &table else {
                return verdict(false, "no table from criterion 3".into());
            };
            let mut worst = f64::INFINITY;
            let mut bad = 0;
            for i in 0..1000 {
                let h = 2.0 + (1e4 - 2.0) * i as f64 / 999.0;
                let n = t.count_up_to(h).expect("within coverage");
                let e = envelope(h).expect("T >= 2");
                worst = worst.min(e.r_val - (n as f64 - e.f_val).abs());
                if !e.contains(n) {
                    bad += 1;
                }
            }
            verdict(
                bad == 0,
                format!("{bad} violations, smallest slack R - |N - F| = {worst:.4}"),
            )
        },
    );

    criterion(&mut results, 5, "properties of E(t)", secs(5), || {
        let mut sandwich_bad = 0;
        let mut worst_ratio = f64::INFINITY;
        let mut quad_diff: f64 = 0.0;
        for t in log_grid(2.0, 1e6, 200) {
            let s = e_frak_sandwich(t).expect("t >= 2");
            let m = s.margin_lo().min(s.margin_hi());
            worst_ratio = worst_ratio.min(m / s.abs_err);
            if !(m > 10.0 * s.abs_err) {
                sandwich_bad += 1;
            }
            let q = e_frak_quadrature(t).expect("t > 1");
            quad_diff = quad_diff.max((q.value - s.value).abs());
        }
        let mut deriv_err: f64 = 0.0;
        for t in log_grid(2.0, 1e6, 50) {
            let d = derivative(|x| e_frak(x).expect("x > 1"), t, 1e-3 * t);
            deriv_err = deriv_err.max(rel(d, -1.0 / (t * t * t.ln())));
        }
        verdict(
            sandwich_bad == 0 && deriv_err < 1e-6 && quad_diff < 1e-10,
            format!(
                "sandwich margin >= {worst_ratio:.2e} x error, derivative rel err {deriv_err:.1e}, \
                 E1 vs quadrature {quad_diff:.1e}"
            ),
        )
    });

    criterion(&mut results, 6, "antiderivatives P and Q", secs(1), || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (mut ep, mut eq): (f64, f64) = (0.0, 0.0);
        for _ in 0..200 {
            // the stencil reaches 2h = 0.002t below t, which must stay in the domain
            let t: f64 = rng.gen_range(2.0..1e4f64).max(2.005);
            let h = 1e-3 * t;
            let dp = derivative(|x| antideriv_f(x).expect("x >= 2"), t, h);
            let dq = derivative(|x| antideriv_r(x).expect("x >= 2"), t, h);
            ep = ep.max(rel(dp, big_f(t).unwrap() / (t * t)));
            eq = eq.max(rel(dq, big_r(t).unwrap() / (t * t)));
        }
        verdict(
            ep < 1e-7 && eq < 1e-7,
            format!("max rel err P' {ep:.1e}, Q' {eq:.1e}"),
        )
    });

    criterion(
        &mut results,
        7,
        "partial-summation identity",
        secs(10),
        || {
            let Some(t) = &table else {
                return verdict(false, "no table from criterion 3".into());
            };
            let weights: [Weight; 6] = [
                ("1", |_| 1.0),
                ("1/t", |t| 1.0 / t),
                ("log t", f64::ln),
                ("1/t^2", |t| 1.0 / (t * t)),
                ("t^-1/2", |t| 1.0 / t.sqrt()),
                ("log^2 t / t", |t| t.ln().powi(2) / t),
            ];
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut worst: f64 = 0.0;
            let mut errors = 0;
            for _ in 0..50 {
                let (_, phi) = weights[rng.gen_range(0..weights.len())];
                let a = rng.gen_range(2.0..1e4);
                let b = rng.gen_range(2.0..1e4);
                let (u, v) = if a < b { (a, b) } else { (b, a) };
                match partial_sum(t, phi, u, v) {
                    Ok(r) => worst = worst.max(r.difference.abs()),
                    Err(_) => errors += 1,
                }
            }
            verdict(
                errors == 0 && worst < 1e-8,
                format!("50 triples, max |direct - Stieltjes| = {worst:.1e}"),
            )
        },
    );

    criterion(&mut results, 8, "tail signs", secs(1), || {
        let mut bad_upper = 0;
        let mut bad_lower = 0;
        let mut grid: Vec<f64> = (0..10_000)
            .map(|i| UPPER_THRESHOLD + i as f64 * 1e-3)
            .collect();
        grid.extend(log_grid(UPPER_THRESHOLD, 1e12, 50_000));
        for &t in &grid {
            if !(tail_upper(t).expect("T >= 2") < 0.0) {
                bad_upper += 1;
            }
        }
        let mut grid: Vec<f64> = (0..10_000).map(|i| 2.0 + i as f64 * 1e-3).collect();
        grid.extend(log_grid(2.0, 1e12, 50_000));
        for &t in &grid {
            if !(tail_lower(t).expect("T >= 2") > 0.0) {
                bad_lower += 1;
            }
        }
        verdict(
            bad_upper == 0 && bad_lower == 0,
            format!(
                "60000 heights each; upper violations {bad_upper}, lower violations {bad_lower}"
            ),
        )
    });

    criterion(
        &mut results,
        9,
        "cross-validation against a reference table",
        secs(5),
        || {
            let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/zeros_to_1000.txt");
            let reference = match parse_reference(&path) {
                Ok(r) => r,
                Err(e) => return verdict(false, e.to_string()),
            };
            let computed = match &table {
                Some(t) => t.clone(),
                None => match build_table(1000.0) {
                    Ok(t) => t,
                    Err(e) => return verdict(false, e.to_string()),
                },
            };
            match cross_validate(&computed, &reference) {
                Ok(r) => verdict(
                    r.passed
                        && r.counts_match
                        && r.computed_count == COUNT_TO_1000
                        && r.max_abs_diff < 1e-6,
                    format!(
                        "{} computed vs {} reference ordinates below {:.3}, max diff {:.1e}",
                        r.computed_count, r.reference_count, r.common_t_max, r.max_abs_diff
                    ),
                ),
                Err(e) => verdict(false, e.to_string()),
            }
        },
    );

    let passed = results.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
