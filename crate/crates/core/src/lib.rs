//! Ordinates of the nontrivial zeros of the Riemann zeta function, the
//! reciprocal-ordinate sum `A(T) = Σ_{0<γ≤T} 1/γ`, and the explicit
//! two-sided estimate
//!
//! ```text
//! 3/50 < A(T) - (log²T/(4π) - log(2π)·log T/(2π)) < 109/250
//! ```
//!
//! together with every closed-form ingredient of that estimate.
//!
//! The crate is organised bottom-up:
//!
//! * [`zeta`] evaluates θ(t), the Hardy Z-function and an Euler–Maclaurin ζ(s).
//! * [`zeros`] isolates, refines, audits and persists zero ordinates.
//! * [`bounds`] holds the counting envelope F ± R, the antiderivatives and the
//!   constants of the estimate.
//! * [`summation`] forms A(T), checks the Stieltjes partial-summation identity
//!   and sweeps the two-sided estimate over a table.
//! * [`ingest`] reads published ordinate tables and cross-validates them.

// guards like `!(t > 0.0)` are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod ingest;
pub mod quad;
pub mod special;
pub mod sum;
pub mod summation;
pub mod zeros;
pub mod zeta;

pub use bounds::{BoundConstants, EnvelopeEval};
pub use error::{Error, Result};
pub use summation::TheoremCheck;
pub use zeros::{TableSource, ZeroOrdinate, ZeroTable};
pub use zeta::{CriticalLinePoint, Method};

/// Version string written into table sidecar files.
pub const TOOL_VERSION: &str = concat!("zgb ", env!("CARGO_PKG_VERSION"));
