//! Command-line front end: the `.fincat` format, command dispatch and reports.

pub mod commands;
pub mod fincat;
pub mod report;

pub use commands::{main_with, run, Cli, CliError, Command};
pub use fincat::{parse, render, DocumentKind, FincatDocument, ParseError};
pub use report::Report;
