//! Shared pieces of the `paintbucket` command-line tool.

pub mod input;
pub mod server;
