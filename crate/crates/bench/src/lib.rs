//! Criterion benchmarks for `qdemon-core`; see `benches/engine.rs`.
