//! Command-line front end for `bvn-core`: the element grammar, JSON output,
//! command dispatch and the acceptance suite.

pub mod acceptance;
pub mod app;
pub mod error;
pub mod grammar;

pub use app::{main_with, ElementJson};
pub use error::CliError;
pub use grammar::{format_element, parse_element, parse_subgroup, parse_word, SpecResolver, Specs};
