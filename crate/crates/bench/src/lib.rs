//! Criterion benchmarks for `insdel-bounds`; see `benches/`.
