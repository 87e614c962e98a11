//! File formats, configuration and the command line for `pzeta-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod input;
pub mod json;

pub use config::{Config, Format};
pub use error::{exit, CliError};
