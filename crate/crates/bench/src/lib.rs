//! Criterion benchmarks for the gralift core crate; see `benches/`.
