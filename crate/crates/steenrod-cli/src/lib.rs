//! Command-line front end: expression parsing, verification runners, and
//! text/JSON/LaTeX rendering over the core algebra crate.

pub mod commands;
pub mod format;
pub mod parser;
pub mod verify;

pub use commands::{run, Cli, Outcome};
