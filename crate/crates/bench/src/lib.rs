//! Criterion benchmarks for the hardyx kernels; run with
//! `cargo bench -p hardyx-bench`.
