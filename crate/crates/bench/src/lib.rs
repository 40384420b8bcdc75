//! Benchmarks for the epimorphism engine live in `benches/`.
