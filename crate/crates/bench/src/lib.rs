//! Benchmarks for `indep-core`; see `benches/`.
