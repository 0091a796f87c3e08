//! File format and subcommands of the `cdga` tool.

pub mod app;
pub mod document;

pub use app::{run, Cli, Command, Failure, Format, Options};
pub use document::{parse, DocumentError, InputDocument};
