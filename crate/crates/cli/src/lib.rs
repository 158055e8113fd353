//! Batch front end for `zgb-core`: builds or loads ordinate tables, evaluates
//! counts, sums and constants, and runs the two-sided sweep.
//!
//! Every subcommand produces a [`Outcome`]: a rendered report plus a verdict.
//! The binary exits 0 only when the verdict is a pass.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use anyhow::{bail, Context};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use zgb_core::bounds::{big_f, big_r, compute_constants, envelope, main_term, BoundConstants};
use zgb_core::ingest::{cross_validate, parse_reference, ValidationReport};
use zgb_core::summation::{theorem_check, theorem_sweep, ReciprocalSums, SweepReport};
use zgb_core::zeros::persist::{load_table, write_table};
use zgb_core::zeros::{build_table, MAX_HEIGHT};
use zgb_core::{TheoremCheck, ZeroTable, TOOL_VERSION};

/// Environment variable naming the directory used to cache computed tables.
pub const TABLE_DIR_ENV: &str = "ZGB_TABLE_DIR";

/// Smallest table `build_table` accepts.
const MIN_BUILD_HEIGHT: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Subcommand {
    Zeros,
    Count,
    Sum,
    Constants,
    Verify,
    Ingest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    /// Height for `count` and `sum`.
    pub at: Option<f64>,
    pub samples: usize,
    /// Table to read instead of computing one.
    pub table: Option<PathBuf>,
    /// Reference file for `ingest`.
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub table_dir: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(subcommand: Subcommand) -> Self {
        Self {
            subcommand,
            t_min: None,
            t_max: None,
            at: None,
            samples: 1000,
            table: None,
            input: None,
            output: None,
            table_dir: None,
            format: Format::Json,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        for (name, v) in [
            ("t-min", self.t_min),
            ("t-max", self.t_max),
            ("at", self.at),
        ] {
            if let Some(v) = v {
                if !v.is_finite() {
                    bail!("--{name} must be finite, got {v}");
                }
            }
        }
        if let (Some(a), Some(b)) = (self.t_min, self.t_max) {
            if !(a < b) {
                bail!("--t-min ({a}) must be below --t-max ({b})");
            }
        }
        if self.samples == 0 {
            bail!("--samples must be at least 1");
        }
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(anyhow::anyhow!("{what} is required for this subcommand"))
            }
        };
        match self.subcommand {
            Subcommand::Zeros => need(self.t_max.is_some(), "--t-max"),
            Subcommand::Count | Subcommand::Sum => need(self.at.is_some(), "--at"),
            Subcommand::Ingest => need(self.input.is_some(), "--file"),
            Subcommand::Constants | Subcommand::Verify => Ok(()),
        }
    }
}

/// Rendered report and whether every check in scope passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    /// Extra human-oriented lines, e.g. the sweep summary in CSV mode.
    pub notes: Option<String>,
    pub passed: bool,
}

pub fn run(config: &RunConfig) -> anyhow::Result<Outcome> {
    config.validate()?;
    match config.subcommand {
        Subcommand::Zeros => run_zeros(config),
        Subcommand::Count => run_count(config),
        Subcommand::Sum => run_sum(config),
        Subcommand::Constants => run_constants(config),
        Subcommand::Verify => run_verify(config),
        Subcommand::Ingest => run_ingest(config),
    }
}

/// JSON object describing a failure, written by the binary on error.
pub fn error_object(err: &anyhow::Error) -> serde_json::Value {
    let kind = err
        .chain()
        .find_map(|e| e.downcast_ref::<zgb_core::Error>())
        .map_or("invalid_input", zgb_core::Error::kind);
    serde_json::json!({
        "error": {
            "kind": kind,
            "message": format!("{err:#}"),
        },
        "tool_version": TOOL_VERSION,
    })
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    // writes go to a Vec, which cannot fail
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
}

fn cache_path(dir: &Path, t_max: f64) -> PathBuf {
    dir.join(format!("zeros_to_{t_max}.txt"))
}

/// The table named by `--table`, a cached one, or a freshly computed one
/// covering at least `height`.
fn obtain_table(config: &RunConfig, height: f64) -> anyhow::Result<ZeroTable> {
    if let Some(path) = &config.table {
        return load_table(path).with_context(|| format!("loading {}", path.display()));
    }
    let t_max = height.max(MIN_BUILD_HEIGHT);
    if !(t_max <= MAX_HEIGHT) {
        bail!("height {height} exceeds the largest computable table ({MAX_HEIGHT})");
    }
    if let Some(dir) = &config.table_dir {
        let path = cache_path(dir, t_max);
        if path.exists() {
            return load_table(&path).with_context(|| format!("loading cached {}", path.display()));
        }
        let table = build_table(t_max)?;
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_table(&table, &path)?;
        // read back so the first run reports what later runs will see
        return Ok(load_table(&path)?);
    }
    Ok(build_table(t_max)?)
}

#[derive(Serialize)]
struct ZerosReport<'a> {
    tool_version: &'a str,
    t_max: f64,
    count: usize,
    max_abs_err: f64,
    audited: bool,
    written_to: Option<&'a Path>,
    ordinates: Option<&'a [zgb_core::ZeroOrdinate]>,
}

fn run_zeros(config: &RunConfig) -> anyhow::Result<Outcome> {
    let t_max = config.t_max.expect("validated");
    let table = if let Some(dir) = config
        .table_dir
        .as_ref()
        .filter(|_| config.output.is_none())
    {
        let cfg = RunConfig {
            table_dir: Some(dir.clone()),
            ..config.clone()
        };
        obtain_table(&cfg, t_max)?
    } else {
        build_table(t_max)?
    };
    if let Some(out) = &config.output {
        write_table(&table, out)?;
    }
    let written_to = config.output.as_deref();
    let report = match config.format {
        Format::Json => json(&ZerosReport {
            tool_version: TOOL_VERSION,
            t_max: table.t_max(),
            count: table.len(),
            max_abs_err: table.max_abs_err(),
            audited: table.is_audited(),
            written_to,
            ordinates: written_to.is_none().then(|| table.ordinates()),
        })?,
        Format::Csv => csv(
            &["index", "gamma", "abs_err"],
            table.ordinates().iter().map(|o| {
                vec![
                    o.index.to_string(),
                    o.gamma.to_string(),
                    o.abs_err.to_string(),
                ]
            }),
        ),
    };
    Ok(Outcome {
        report,
        notes: None,
        passed: table.is_audited(),
    })
}

#[derive(Serialize)]
struct CountReport {
    t: f64,
    n: usize,
    f: f64,
    r: f64,
    envelope_ok: bool,
}

fn run_count(config: &RunConfig) -> anyhow::Result<Outcome> {
    let t = config.at.expect("validated");
    let table = obtain_table(config, t)?;
    let n = table.count_up_to(t)?;
    let env = envelope(t)?;
    let rep = CountReport {
        t,
        n,
        f: big_f(t)?,
        r: big_r(t)?,
        envelope_ok: env.contains(n),
    };
    let report = match config.format {
        Format::Json => json(&rep)?,
        Format::Csv => csv(
            &["T", "N", "F", "R", "envelope_ok"],
            [vec![
                t.to_string(),
                n.to_string(),
                rep.f.to_string(),
                rep.r.to_string(),
                rep.envelope_ok.to_string(),
            ]],
        ),
    };
    Ok(Outcome {
        report,
        notes: None,
        passed: rep.envelope_ok,
    })
}

fn check_row(c: &TheoremCheck) -> Vec<String> {
    vec![
        c.t.to_string(),
        c.a_val.to_string(),
        c.m_val.to_string(),
        c.delta.to_string(),
        c.lower_ok.to_string(),
        c.upper_ok.to_string(),
        c.margin_lo.to_string(),
        c.margin_hi.to_string(),
    ]
}

/// Column order of `verify` CSV output and `sum` CSV output.
pub const CHECK_COLUMNS: [&str; 8] = [
    "T",
    "A",
    "M",
    "delta",
    "lower_ok",
    "upper_ok",
    "margin_lo",
    "margin_hi",
];

#[derive(Serialize)]
struct SumReport {
    t: f64,
    a: f64,
    m: f64,
    delta: f64,
    /// Absent below T = 2, where neither side is claimed.
    check: Option<TheoremCheck>,
    passed: bool,
}

fn run_sum(config: &RunConfig) -> anyhow::Result<Outcome> {
    let t = config.at.expect("validated");
    let table = obtain_table(config, t)?;
    let m = main_term(t)?;
    let sums = ReciprocalSums::new(&table);
    table.count_up_to(t)?;
    let check = theorem_check(&sums, t)?;
    let applies = check.lower_applies();
    let passed = !applies || check.passes();
    let report = match config.format {
        Format::Json => json(&SumReport {
            t,
            a: check.a_val,
            m,
            delta: check.delta,
            check: applies.then_some(check),
            passed,
        })?,
        Format::Csv => csv(&CHECK_COLUMNS, [check_row(&check)]),
    };
    Ok(Outcome {
        report,
        notes: None,
        passed,
    })
}

#[derive(Serialize)]
struct ConstantsReport<'a> {
    tool_version: &'a str,
    #[serde(flatten)]
    constants: &'a BoundConstants,
    c_au_verdict: &'static str,
    c_al_verdict: &'static str,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run_constants(config: &RunConfig) -> anyhow::Result<Outcome> {
    let c = compute_constants()?;
    let passed = c.converged && c.c_au_below_cap() && c.c_al_above_floor();
    let report = match config.format {
        Format::Json => json(&ConstantsReport {
            tool_version: TOOL_VERSION,
            constants: &c,
            c_au_verdict: verdict(c.c_au_below_cap()),
            c_al_verdict: verdict(c.c_al_above_floor()),
        })?,
        Format::Csv => csv(
            &["name", "value", "compared_with", "verdict"],
            [
                vec![
                    "gamma1".into(),
                    c.gamma1.to_string(),
                    String::new(),
                    String::new(),
                ],
                vec![
                    "c_au".into(),
                    c.c_au.to_string(),
                    format!("< {}", c.c_au_cap),
                    verdict(c.c_au_below_cap()).into(),
                ],
                vec![
                    "c_al".into(),
                    c.c_al.to_string(),
                    format!("> {}", c.c_al_floor),
                    verdict(c.c_al_above_floor()).into(),
                ],
                vec![
                    "limit_drift".into(),
                    c.limit_drift.to_string(),
                    String::new(),
                    verdict(c.converged).into(),
                ],
            ],
        ),
    };
    Ok(Outcome {
        report,
        notes: None,
        passed,
    })
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    tool_version: &'a str,
    t_min: f64,
    t_max: f64,
    samples: usize,
    table_count: usize,
    records: usize,
    min_delta: f64,
    max_delta: f64,
    min_margin_lo: f64,
    min_margin_hi: f64,
    failures: usize,
    all_pass: bool,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    summary: VerifySummary<'a>,
    records: &'a [TheoremCheck],
}

fn run_verify(config: &RunConfig) -> anyhow::Result<Outcome> {
    let table = match (&config.table, config.t_max) {
        (Some(_), _) => obtain_table(config, 0.0)?,
        (None, t_max) => obtain_table(config, t_max.unwrap_or(1000.0))?,
    };
    let t_min = config.t_min.unwrap_or(2.0);
    let t_max = config.t_max.unwrap_or_else(|| table.t_max());
    let sweep: SweepReport = theorem_sweep(&table, t_min, t_max, config.samples)?;
    let summary = VerifySummary {
        tool_version: TOOL_VERSION,
        t_min,
        t_max,
        samples: config.samples,
        table_count: table.len(),
        records: sweep.records.len(),
        min_delta: sweep.min_delta,
        max_delta: sweep.max_delta,
        min_margin_lo: sweep.min_margin_lo,
        min_margin_hi: sweep.min_margin_hi,
        failures: sweep.failures,
        all_pass: sweep.all_pass(),
    };
    let (report, notes) = match config.format {
        Format::Json => (
            json(&VerifyReport {
                summary,
                records: &sweep.records,
            })?,
            None,
        ),
        Format::Csv => {
            let mut notes = String::new();
            writeln!(
                notes,
                "records={} failures={} min_margin_lo={} min_margin_hi={} min_delta={} max_delta={}",
                summary.records,
                summary.failures,
                summary.min_margin_lo,
                summary.min_margin_hi,
                summary.min_delta,
                summary.max_delta
            )?;
            (
                csv(&CHECK_COLUMNS, sweep.records.iter().map(check_row)),
                Some(notes),
            )
        }
    };
    Ok(Outcome {
        report,
        notes,
        passed: sweep.all_pass(),
    })
}

#[derive(Serialize)]
struct IngestReport<'a> {
    tool_version: &'a str,
    file: &'a Path,
    reference_count: usize,
    reference_t_max: f64,
    reference_abs_err: f64,
    validation: &'a ValidationReport,
}

fn run_ingest(config: &RunConfig) -> anyhow::Result<Outcome> {
    let file = config.input.as_deref().expect("validated");
    let reference = parse_reference(file)?;
    let height = config
        .t_max
        .unwrap_or(reference.t_max())
        .min(reference.t_max());
    let computed = obtain_table(
        &RunConfig {
            table: None,
            ..config.clone()
        },
        height.min(MAX_HEIGHT),
    )?;
    let validation = cross_validate(&computed, &reference)?;
    if let Some(out) = &config.output {
        write_table(&reference, out)?;
    }
    let report = match config.format {
        Format::Json => json(&IngestReport {
            tool_version: TOOL_VERSION,
            file,
            reference_count: reference.len(),
            reference_t_max: reference.t_max(),
            reference_abs_err: reference.max_abs_err(),
            validation: &validation,
        })?,
        Format::Csv => csv(
            &["index", "computed", "reference", "abs_diff", "tolerance"],
            validation.pairs.iter().map(|p| {
                vec![
                    p.index.to_string(),
                    p.computed.to_string(),
                    p.reference.to_string(),
                    p.abs_diff.to_string(),
                    p.tolerance.to_string(),
                ]
            }),
        ),
    };
    Ok(Outcome {
        report,
        notes: None,
        passed: validation.passed,
    })
}
