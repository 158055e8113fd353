//! Published ordinate tables: parsing and cross-validation against computed
//! tables.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::zeros::persist::{read_meta, read_ordinates};
use crate::zeros::{TableSource, ZeroTable};
use crate::{Error, Result};

/// Reads an ordinate file as an ingested table and audits it.
///
/// Each ordinate gets the error bound 10^(−d), d being the fewest decimal
/// places printed on any line. Coverage ends that far above the last ordinate,
/// so an exact value rounded down in print still falls inside, unless a
/// sidecar declares more.
pub fn parse_reference(path: &Path) -> Result<ZeroTable> {
    let parsed = read_ordinates(path)?;
    let last = *parsed
        .values
        .last()
        .expect("read_ordinates rejects empty files");
    let err = parsed.printed_precision();
    let t_max = read_meta(path)?.map_or(last + err, |m| m.t_max.max(last + err));
    let table = ZeroTable::new(
        parsed.values.iter().map(|&g| (g, err)).collect(),
        t_max,
        TableSource::Ingested,
    )?;
    table.into_audited()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairDiff {
    pub index: usize,
    pub computed: f64,
    pub reference: f64,
    pub abs_diff: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub common_t_max: f64,
    pub computed_count: usize,
    pub reference_count: usize,
    pub pairs: Vec<PairDiff>,
    pub max_abs_diff: f64,
    pub counts_match: bool,
    pub passed: bool,
}

/// Compares two tables index by index over their common coverage.
///
/// A count mismatch fails the comparison outright; otherwise it passes when
/// every pair differs by less than the sum of the two error bounds.
pub fn cross_validate(computed: &ZeroTable, reference: &ZeroTable) -> Result<ValidationReport> {
    let common = computed.t_max().min(reference.t_max());
    let first = |t: &ZeroTable| t.ordinates().first().map(|o| o.gamma);
    match (first(computed), first(reference)) {
        (Some(a), Some(b)) if a <= common && b <= common => {}
        _ => return Err(Error::CoverageDisjoint),
    }
    let nc = computed.count_le(common);
    let nr = reference.count_le(common);
    let pairs: Vec<PairDiff> = computed.ordinates()[..nc]
        .iter()
        .zip(&reference.ordinates()[..nr])
        .map(|(c, r)| PairDiff {
            index: c.index,
            computed: c.gamma,
            reference: r.gamma,
            abs_diff: (c.gamma - r.gamma).abs(),
            tolerance: c.abs_err + r.abs_err,
        })
        .collect();
    let max_abs_diff = pairs.iter().map(|p| p.abs_diff).fold(0.0, f64::max);
    let counts_match = nc == nr;
    let passed = counts_match && pairs.iter().all(|p| p.abs_diff < p.tolerance);
    Ok(ValidationReport {
        common_t_max: common,
        computed_count: nc,
        reference_count: nr,
        pairs,
        max_abs_diff,
        counts_match,
        passed,
    })
}

/// Combines two tables that passed [`cross_validate`]: over the common range
/// each ordinate is taken from whichever table bounds it more tightly, beyond
/// it from the table with the larger coverage. The result is re-audited.
pub fn merge_tables(a: &ZeroTable, b: &ZeroTable) -> Result<ZeroTable> {
    let report = cross_validate(a, b)?;
    if !report.passed {
        return Err(Error::Invalid(format!(
            "tables disagree over [0, {}]: counts {} and {}, max difference {:e}",
            report.common_t_max, report.computed_count, report.reference_count, report.max_abs_diff
        )));
    }
    let n = report.pairs.len();
    let mut points: Vec<(f64, f64)> = a.ordinates()[..n]
        .iter()
        .zip(&b.ordinates()[..n])
        .map(|(x, y)| {
            if x.abs_err <= y.abs_err {
                (x.gamma, x.abs_err)
            } else {
                (y.gamma, y.abs_err)
            }
        })
        .collect();
    let longer = if a.t_max() >= b.t_max() { a } else { b };
    points.extend(longer.ordinates()[n..].iter().map(|o| (o.gamma, o.abs_err)));
    ZeroTable::new(points, longer.t_max(), TableSource::Merged)?.into_audited()
}
