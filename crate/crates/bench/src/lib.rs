//! Criterion benchmarks for kdom-core live under `benches/`.
