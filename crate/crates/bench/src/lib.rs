//! Criterion benchmarks for blockpat live under `benches/`.
