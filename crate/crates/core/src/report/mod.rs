//! Table rendering and the command line front end.

pub mod cli;
mod format;
pub mod published;
mod table;

pub use format::{format_factorial, format_value, parse_value};
pub use table::{compute_cells, render_table, Cell, OutputFormat, TableKind, TableRequest};
