//! Criterion benchmarks for `orbitwave-core`; see `benches/transforms.rs`.
