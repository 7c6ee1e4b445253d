//! File formats and the command-line front end for `ncg-core`.

pub mod cli;
pub mod formats;

pub use ncg_core;
