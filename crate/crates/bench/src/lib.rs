//! Criterion benchmarks for `semimed`; see `benches/`.
