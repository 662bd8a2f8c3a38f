//! Support code for the `perdom` binary: config parsing, report rendering and
//! the verification suite.

pub mod config;
pub mod report;
pub mod suite;
