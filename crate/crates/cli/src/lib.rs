//! Library side of the `besselsum` command-line tool.

pub mod args;
pub mod config;
pub mod input;
pub mod record;
pub mod run;
