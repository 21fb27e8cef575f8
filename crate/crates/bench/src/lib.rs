//! Benchmark harness; the kernels live in `benches/`.

pub use gdl_core;
