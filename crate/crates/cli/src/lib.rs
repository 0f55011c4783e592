//! Library half of the `toricfill` binary: the plumbing text format, JSON
//! documents, SVG rendering and the subcommands.

pub mod commands;
pub mod json;
pub mod spec;
pub mod svg;

pub use commands::{run, Cli, Output};
pub use spec::{parse_spec, unparse, ParseError};
