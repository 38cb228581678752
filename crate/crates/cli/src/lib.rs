//! Library half of the `rll` command: subcommand implementations and the
//! fixture corpus.

pub mod commands;
pub mod corpus;
pub mod sample;
