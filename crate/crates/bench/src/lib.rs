//! Criterion benchmarks for the qdouble pipeline live under `benches/`.
