//! Benchmarks for `greenring`; see `benches/`.
