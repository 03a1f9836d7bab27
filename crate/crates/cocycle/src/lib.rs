//! File formats and subcommands behind the `cocycle` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;
