//! Document formats and subcommand implementations for the `pminor` binary.

pub mod commands;
pub mod document;
