//! File formats, worked-example replay and the command-line front end for
//! [`gubin_core`].

pub mod cli;
pub mod corpus;
pub mod dimacs;
pub mod fixtures;
pub mod trace;

pub use dimacs::{parse_dimacs, serialize_dimacs, DimacsError};
