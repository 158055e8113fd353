//! Benchmarks for `zgb-core`; see `benches/`.

/// Heights used by the evaluation benchmarks.
pub const HEIGHTS: [f64; 4] = [50.0, 500.0, 5_000.0, 50_000.0];
