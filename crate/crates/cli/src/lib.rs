//! Command-line front end: material-function tables, figure reproduction and self checks.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O, 3 solver failure, 4 failed validation.

mod cli;
pub mod commands;
pub mod error;
pub mod figures;
pub mod grid;
pub mod svg;
pub mod table;
pub mod validate;

pub use cli::run;
pub use error::CliError;
