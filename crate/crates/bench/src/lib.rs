//! Criterion benchmarks for k3-arith live in `benches/`; run them with `cargo bench -p k3-bench`.
