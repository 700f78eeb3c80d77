//! Experiment harness, exhaustive reference oracles and the `anonhist`
//! command line.

pub mod audit;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod oracle;

pub use error::{BenchError, Result};
