//! Benchmarks for the dispersion solvers and the simulator live in
//! `benches/`; run them with `cargo bench -p roadfield-bench`.
