//! Benchmark-only crate; the workloads live in `benches/spectral.rs`.
