//! Criterion benchmarks for the `qkit` kernels live in `benches/`.
