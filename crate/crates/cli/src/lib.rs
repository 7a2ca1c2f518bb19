//! Plumbing behind the `grundy` binary, split out so integration tests can
//! parse the structured reports it emits.
//!
//! Exit code contract: 0 on success, 2 on input errors, 3 when the search
//! hit its expansion budget.

pub mod args;
pub mod commands;
pub mod report;

pub use args::Cli;
pub use commands::{run, CliError};
pub use report::{CompareReport, Format, RunReport, TableReport};
