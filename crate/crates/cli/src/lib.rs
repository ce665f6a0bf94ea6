//! Command implementations and report formats behind the `cheby` binary.

pub mod commands;
pub mod rational;
pub mod report;
