//! Plain-text ordinate files: one decimal ordinate per line, ascending,
//! optionally preceded by an index column. A JSON sidecar next to the file
//! (`<file>.json`) carries coverage and provenance.

use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{TableSource, ZeroTable};
use crate::{Error, Result};

/// Decimal places written for each ordinate.
pub const WRITE_DECIMALS: usize = 9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub t_max: f64,
    pub source: TableSource,
    pub audited: bool,
    pub count: usize,
    pub max_abs_err: f64,
    pub tool_version: String,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes the ordinates and the sidecar.
pub fn write_table(table: &ZeroTable, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    for g in table.gammas() {
        writeln!(w, "{g:.WRITE_DECIMALS$}")?;
    }
    w.flush()?;
    let meta = TableMeta {
        t_max: table.t_max(),
        source: table.source(),
        audited: table.is_audited(),
        count: table.len(),
        max_abs_err: table.max_abs_err(),
        tool_version: crate::TOOL_VERSION.to_string(),
    };
    fs::write(
        sidecar_path(path),
        serde_json::to_string_pretty(&meta)? + "\n",
    )?;
    Ok(())
}

pub fn read_meta(path: &Path) -> Result<Option<TableMeta>> {
    let side = sidecar_path(path);
    if !side.exists() {
        return Ok(None);
    }
    Ok(Some(serde_json::from_str(&fs::read_to_string(side)?)?))
}

/// Ordinates read from a text file.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedOrdinates {
    pub values: Vec<f64>,
    /// Fewest decimal places seen on any line.
    pub min_decimals: usize,
    /// Largest index in the leading column, when the file has one.
    pub declared_count: Option<usize>,
}

impl ParsedOrdinates {
    /// Error bound implied by the printed precision.
    pub fn printed_precision(&self) -> f64 {
        10f64.powi(-(self.min_decimals as i32))
    }
}

/// Parses a one- or two-column ordinate file. With two whitespace-separated
/// fields per line the second is the ordinate. Blank lines and lines starting
/// with `#` are skipped.
pub fn read_ordinates(path: &Path) -> Result<ParsedOrdinates> {
    let text = fs::read_to_string(path)?;
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut values = Vec::new();
    let mut min_decimals = usize::MAX;
    let mut declared_count = None;
    let mut columns = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (columns, fields.len()) {
            (None, n @ (1 | 2)) => columns = Some(n),
            (Some(c), n) if c == n => {}
            (_, n) => {
                return Err(parse_err(
                    line_no,
                    format!("expected {} field(s), found {n}", columns.unwrap_or(1)),
                ))
            }
        }
        let field = *fields.last().expect("non-empty line");
        if fields.len() == 2 {
            let idx: usize = fields[0]
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad index {:?}", fields[0])))?;
            declared_count = Some(declared_count.unwrap_or(0).max(idx));
        }
        let value: f64 = field
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad ordinate {field:?}")))?;
        if !value.is_finite() || value <= 0.0 {
            return Err(parse_err(
                line_no,
                format!("ordinate {field} is not a positive number"),
            ));
        }
        let decimals = field.split_once('.').map_or(0, |(_, frac)| {
            frac.chars().take_while(|c| c.is_ascii_digit()).count()
        });
        min_decimals = min_decimals.min(decimals);
        if let Some(&prev) = values.last() {
            if value <= prev {
                return Err(Error::NotIncreasing {
                    path: path.to_path_buf(),
                    line: line_no,
                    previous: prev,
                    value,
                });
            }
        }
        values.push(value);
    }
    if values.is_empty() {
        return Err(parse_err(0, "file holds no ordinates".to_string()));
    }
    let first = values[0];
    if (first - 14.1347).abs() > 1e-3 {
        return Err(Error::SanityGate { first });
    }
    Ok(ParsedOrdinates {
        values,
        min_decimals,
        declared_count,
    })
}

/// Reads a table written by [`write_table`] (or any ordinate file) and audits
/// it. Coverage and provenance come from the sidecar when present; otherwise
/// coverage ends just above the last ordinate (by its printed error bound)
/// and the source is `Ingested`.
pub fn load_table(path: &Path) -> Result<ZeroTable> {
    let parsed = read_ordinates(path)?;
    let meta = read_meta(path)?;
    let last = *parsed.values.last().expect("non-empty");
    let (t_max, source, err) = match &meta {
        Some(m) => (
            m.t_max.max(last),
            m.source,
            parsed.printed_precision().max(m.max_abs_err),
        ),
        None => {
            let err = parsed.printed_precision();
            (last + err, TableSource::Ingested, err)
        }
    };
    let table = ZeroTable::new(
        parsed.values.iter().map(|&g| (g, err)).collect(),
        t_max,
        source,
    )?;
    table.into_audited()
}
