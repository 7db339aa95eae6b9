//! Command-line front end and JSON formats for `lamring-core`.

pub mod cli;
pub mod format;
pub mod render;

pub use cli::{run, Output};
