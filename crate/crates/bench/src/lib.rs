//! Criterion benchmarks for `jacring-core`; see `benches/`.
