//! Criterion benchmarks for the superpattern, drawing and search pipelines;
//! see `benches/pipeline.rs`.
