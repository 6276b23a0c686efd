//! Command-line front end: point-set files, JSON reports and verification suites.

pub mod commands;
pub mod pointfile;
pub mod report;
pub mod verify;

pub use commands::{bound, gb, load, solve, BoundSelection, CliError, Loaded, SolveTarget};
pub use pointfile::{parse_point_set, write_point_set, ParseError};
pub use report::ReportDocument;
