//! Criterion benchmarks for weylkit; see `benches/`.
