//! Criterion benchmarks for the solvers; see `benches/solvers.rs`.
