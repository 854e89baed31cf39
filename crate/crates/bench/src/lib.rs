//! Criterion benchmarks for the chromplane crate; see `benches/`.
