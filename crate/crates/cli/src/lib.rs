//! Command-line front end for `purimetrics-core`: JSON file formats, CSV
//! output and the `purimetrics` subcommands.

pub mod args;
pub mod commands;
pub mod io;
