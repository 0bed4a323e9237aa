//! Command-line front end: an operator expression language and one
//! subcommand per verification.

pub mod commands;
pub mod eval;
pub mod expr;
pub mod report;

pub use commands::{main_with, run, Cli, Command, Global};
pub use report::{CliError, Format, Report, Status};
