//! Criterion benchmarks for the main numerical kernels; see `benches/`.
