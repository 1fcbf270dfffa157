//! Benchmark harness for the exact algebra and Reeb tree engines; see `benches/`.
