//! Command-line front end for `weylkit`: expression parsing, canonical
//! printing, JSON documents and subcommand dispatch.

pub mod app;
pub mod json;
pub mod parse;
pub mod words;

pub use app::{run, Cli, CliError, EXIT_FAILED, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
pub use json::{decode_operator, encode_operator, DecodeError, OperatorDocument};
pub use parse::{format_canonical, parse_ast, parse_expr, Expr, ParseError};
pub use words::parse_word;
