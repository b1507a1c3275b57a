//! Benchmark-only crate; the measured kernels live in `primelab-core`.
//! See `benches/kernels.rs`.
