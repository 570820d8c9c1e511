//! Benchmarks for foamcalc live in `benches/`.
