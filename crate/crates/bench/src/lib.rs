//! Shared helpers for the benchmark targets; the interesting code lives in
//! `benches/`.

pub use howe_core;
