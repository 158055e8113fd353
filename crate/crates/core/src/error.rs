use std::path::PathBuf;

use crate::zeros::AuditReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what}: argument {value} outside domain ({domain})")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("zeta has a pole at s = 1")]
    Pole,

    #[error("|t| = {t} is outside the Euler-Maclaurin oracle range |t| <= {limit}")]
    OutsideOracleRange { t: f64, limit: f64 },

    #[error("no sign change of Z on [{a}, {b}]")]
    NoSignChange { a: f64, b: f64 },

    #[error("refinement of bracket [{a}, {b}] did not converge after {iterations} iterations")]
    NoConvergence { a: f64, b: f64, iterations: usize },

    #[error("completeness audit failed: {}", .0.summary())]
    AuditFailed(Box<AuditReport>),

    #[error("table is not audited")]
    Unaudited,

    #[error("height {t} exceeds table coverage {t_max}")]
    OutOfRange { t: f64, t_max: f64 },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: ordinate {value} does not exceed previous ordinate {previous}")]
    NotIncreasing {
        path: PathBuf,
        line: usize,
        previous: f64,
        value: f64,
    },

    #[error("first ordinate {first} is not within 1e-3 of 14.1347")]
    SanityGate { first: f64 },

    #[error("tables have disjoint coverage")]
    CoverageDisjoint,

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Pole => "pole",
            Error::OutsideOracleRange { .. } => "outside_oracle_range",
            Error::NoSignChange { .. } => "no_sign_change",
            Error::NoConvergence { .. } => "no_convergence",
            Error::AuditFailed(_) => "audit_failed",
            Error::Unaudited => "unaudited",
            Error::OutOfRange { .. } => "out_of_range",
            Error::Parse { .. } => "parse",
            Error::NotIncreasing { .. } => "not_increasing",
            Error::SanityGate { .. } => "sanity_gate",
            Error::CoverageDisjoint => "coverage_disjoint",
            Error::Invalid(_) => "invalid",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            domain,
        }
    }
}
