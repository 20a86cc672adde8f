//! Front end for the `nonclass` binary: spec files, reports, sweeps and the
//! self-test.

pub mod build;
pub mod error;
pub mod report;
pub mod selftest;
pub mod spec;
pub mod sweep;

pub use error::{CliError, CliResult};
