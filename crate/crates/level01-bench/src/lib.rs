//! Benchmark harness for the prover; see `benches/prover.rs`.
