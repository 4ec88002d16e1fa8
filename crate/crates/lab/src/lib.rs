//! Benchmark definitions, run configuration, drivers, and file formats for
//! the shallow-water scheme laboratory.

pub mod config;
pub mod error;
pub mod examples;
pub mod output;
pub mod runner;
pub mod selftest;

pub use error::LabError;
