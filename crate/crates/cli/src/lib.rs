//! Configuration, suite orchestration and reporting behind the `qdouble` binary.

pub mod config;
pub mod output;
pub mod suite;
