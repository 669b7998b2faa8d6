//! Criterion benchmarks for the fracdiff crate; see `benches/`.
